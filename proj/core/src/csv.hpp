#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace macronet::detail {

// Splits one CSV record. Double-quoted fields may contain commas and doubled
// quotes; unquoted fields are trimmed of surrounding blanks. Returns false on
// an unterminated quote.
inline bool split_csv_line(std::string_view line, std::vector<std::string>& out) {
  out.clear();
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  auto flush = [&] {
    if (!was_quoted) {
      const auto b = field.find_first_not_of(" \t");
      const auto e = field.find_last_not_of(" \t");
      field = b == std::string::npos ? std::string{} : field.substr(b, e - b + 1);
    }
    out.push_back(std::move(field));
    field.clear();
    was_quoted = false;
  };
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"' && field.find_first_not_of(" \t") == std::string::npos) {
      field.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      flush();
    } else {
      field += c;
    }
  }
  if (quoted) return false;
  flush();
  return true;
}

}  // namespace macronet::detail
