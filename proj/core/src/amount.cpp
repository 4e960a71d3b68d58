#include "macronet/amount.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "macronet/error.hpp"

namespace macronet {

namespace {

[[noreturn]] void bad_amount(std::string_view text) {
  throw Error(ErrorCode::SchemaError, "malformed amount '" + std::string(text) + "'");
}

}  // namespace

Amount Amount::parse(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto dot = s.find('.');
  std::string_view whole = s.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
  if (whole.empty() || (dot != std::string_view::npos && (frac.empty() || frac.size() > 2))) {
    bad_amount(text);
  }

  constexpr std::int64_t kLimit = std::numeric_limits<std::int64_t>::max() / 100;
  std::int64_t units = 0;
  for (char c : whole) {
    if (c < '0' || c > '9') bad_amount(text);
    if (units > (kLimit - 9) / 10) bad_amount(text);
    units = units * 10 + (c - '0');
  }
  std::int64_t cents = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    cents *= 10;
    if (i < frac.size()) {
      char c = frac[i];
      if (c < '0' || c > '9') bad_amount(text);
      cents += c - '0';
    }
  }
  std::int64_t total = units * 100 + cents;
  return Amount(negative ? -total : total);
}

std::string Amount::str() const {
  std::uint64_t magnitude = cents_ < 0 ? 0 - static_cast<std::uint64_t>(cents_)
                                       : static_cast<std::uint64_t>(cents_);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%llu.%02llu", cents_ < 0 ? "-" : "",
                static_cast<unsigned long long>(magnitude / 100),
                static_cast<unsigned long long>(magnitude % 100));
  return buf;
}

namespace {

// Half away from zero. The nudge makes ratios that are decimal halves up to
// binary representation error round the way their decimal form would.
long long rounded_hundredths(double value) {
  const double scaled = value * 100.0;
  return std::llround(scaled + std::copysign(1e-9 * std::max(1.0, std::fabs(scaled)), scaled));
}

}  // namespace

double round_pct(double value) { return static_cast<double>(rounded_hundredths(value)) / 100.0; }

std::string format_pct(double value) {
  const long long hundredths = rounded_hundredths(value);
  const unsigned long long magnitude =
      hundredths < 0 ? 0ULL - static_cast<unsigned long long>(hundredths)
                     : static_cast<unsigned long long>(hundredths);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%llu.%02llu", hundredths < 0 ? "-" : "", magnitude / 100,
                magnitude % 100);
  return buf;
}

}  // namespace macronet
