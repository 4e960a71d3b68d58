#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace macronet {

// Fixed-point decimal with exactly two fractional digits, stored as a count
// of hundredths. Series amounts (EUR millions, index points) use this type so
// that sums and round trips are exact.
class Amount {
 public:
  constexpr Amount() = default;

  static constexpr Amount from_cents(std::int64_t cents) { return Amount(cents); }

  // Accepts `[-]digits[.d[d]]`. Throws Error(SchemaError) otherwise.
  static Amount parse(std::string_view text);

  constexpr std::int64_t cents() const { return cents_; }
  double to_double() const { return static_cast<double>(cents_) / 100.0; }

  // Always renders two fraction digits, e.g. "1234.50", "-0.05".
  std::string str() const;

  constexpr Amount operator+(Amount other) const { return Amount(cents_ + other.cents_); }
  constexpr Amount operator-(Amount other) const { return Amount(cents_ - other.cents_); }
  constexpr Amount& operator+=(Amount other) {
    cents_ += other.cents_;
    return *this;
  }

  constexpr auto operator<=>(const Amount&) const = default;

 private:
  constexpr explicit Amount(std::int64_t cents) : cents_(cents) {}
  std::int64_t cents_ = 0;
};

// Rounds a ratio (percent) half away from zero to two decimals and renders it.
// Used for every share and growth figure at presentation time.
std::string format_pct(double value);

// The rounded value as a double, same rule as format_pct.
double round_pct(double value);

}  // namespace macronet
