#include "macronet/calendar.hpp"

#include <chrono>
#include <cstdio>

#include "macronet/error.hpp"

namespace macronet {

namespace {

// Parses exactly `width` ASCII digits.
bool read_digits(std::string_view s, std::size_t pos, std::size_t width, int& out) {
  if (pos + width > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

[[noreturn]] void bad(std::string_view what, std::string_view text) {
  throw Error(ErrorCode::SchemaError,
              "malformed " + std::string(what) + " '" + std::string(text) + "'");
}

}  // namespace

Date Date::parse(std::string_view text) {
  Date d;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !read_digits(text, 0, 4, d.year) ||
      !read_digits(text, 5, 2, d.month) || !read_digits(text, 8, 2, d.day)) {
    bad("date", text);
  }
  const std::chrono::year_month_day ymd{std::chrono::year{d.year},
                                        std::chrono::month{static_cast<unsigned>(d.month)},
                                        std::chrono::day{static_cast<unsigned>(d.day)}};
  if (!ymd.ok()) bad("date", text);
  return d;
}

std::string Date::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
  return buf;
}

Month Month::parse(std::string_view text) {
  Month m;
  if (text.size() != 7 || text[4] != '-' || !read_digits(text, 0, 4, m.year) ||
      !read_digits(text, 5, 2, m.month) || m.month < 1 || m.month > 12) {
    bad("month", text);
  }
  return m;
}

std::string Month::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

Quarter::Quarter(int year, int index) : year_(year), index_(index) {
  if (index < 1 || index > 4 || year < 0 || year > 9999) {
    throw Error(ErrorCode::InvalidArgument,
                "quarter out of range: " + std::to_string(year) + "Q" + std::to_string(index));
  }
}

Quarter Quarter::parse(std::string_view text) {
  int year = 0;
  int index = 0;
  if (text.size() != 6 || (text[4] != 'Q' && text[4] != 'q') || !read_digits(text, 0, 4, year) ||
      !read_digits(text, 5, 1, index) || index < 1 || index > 4) {
    bad("quarter", text);
  }
  return Quarter(year, index);
}

Quarter Quarter::of(Month m) { return Quarter(m.year, (m.month - 1) / 3 + 1); }

Quarter Quarter::of(const Date& d) { return of(Month{d.year, d.month}); }

Quarter Quarter::next() const { return index_ == 4 ? Quarter(year_ + 1, 1) : Quarter(year_, index_ + 1); }

Quarter Quarter::prev() const { return index_ == 1 ? Quarter(year_ - 1, 4) : Quarter(year_, index_ - 1); }

Date Quarter::last_day() const {
  namespace chr = std::chrono;
  const chr::year_month_day_last ymdl(
      chr::year(year_), chr::month_day_last(chr::month(static_cast<unsigned>(index_ * 3))));
  return Date{year_, index_ * 3, static_cast<int>(static_cast<unsigned>(ymdl.day()))};
}

int Quarter::distance_from(Quarter from) const {
  return (year_ - from.year_) * 4 + (index_ - from.index_);
}

std::string Quarter::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04dQ%d", year_, index_);
  return buf;
}

int quarter_count(Quarter from, Quarter to) {
  return to < from ? 0 : to.distance_from(from) + 1;
}

}  // namespace macronet
