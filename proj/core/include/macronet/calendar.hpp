#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace macronet {

struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  // "YYYY-MM-DD", validated against the Gregorian calendar.
  static Date parse(std::string_view text);
  std::string str() const;

  auto operator<=>(const Date&) const = default;
};

struct Month {
  int year = 1970;
  int month = 1;  // 1..12

  // "YYYY-MM"
  static Month parse(std::string_view text);
  std::string str() const;

  auto operator<=>(const Month&) const = default;
};

class Quarter {
 public:
  constexpr Quarter() = default;
  Quarter(int year, int index);

  // "YYYYQn"
  static Quarter parse(std::string_view text);
  static Quarter of(Month m);
  static Quarter of(const Date& d);

  int year() const { return year_; }
  int index() const { return index_; }

  Quarter next() const;
  Quarter prev() const;
  Month last_month() const { return Month{year_, index_ * 3}; }
  Date last_day() const;

  // Signed number of quarters from `from` to this one.
  int distance_from(Quarter from) const;

  std::string str() const;

  auto operator<=>(const Quarter&) const = default;

 private:
  int year_ = 1970;
  int index_ = 1;
};

// Number of quarters in [from, to], both included; 0 when to < from.
int quarter_count(Quarter from, Quarter to);

}  // namespace macronet
