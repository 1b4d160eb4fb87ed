#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace its {

// A calendar month. Ordered and convertible to a running month count.
struct YearMonth {
  int year = 1970;
  int month = 1;  // 1..12

  constexpr long index() const noexcept { return static_cast<long>(year) * 12 + (month - 1); }

  static constexpr YearMonth from_index(long idx) noexcept {
    long y = idx >= 0 ? idx / 12 : -((-idx + 11) / 12);
    return YearMonth{static_cast<int>(y), static_cast<int>(idx - y * 12) + 1};
  }

  constexpr YearMonth operator+(long months) const noexcept { return from_index(index() + months); }
  constexpr YearMonth operator-(long months) const noexcept { return from_index(index() - months); }

  friend constexpr bool operator==(const YearMonth&, const YearMonth&) = default;
  friend constexpr auto operator<=>(const YearMonth& a, const YearMonth& b) noexcept {
    return a.index() <=> b.index();
  }

  // ISO-style "YYYY-MM".
  std::string to_string() const;
};

// Number of months from `from` to `to` (positive when `to` is later).
constexpr long months_between(YearMonth from, YearMonth to) noexcept { return to.index() - from.index(); }

// Parses `text` against a pattern in which "YYYY" matches a 4-digit year,
// "MM" a 2-digit month, "DD" a 2-digit day (ignored), a backslash makes the
// next character literal and any other character matches itself.
// Throws its::Error(Parse) on mismatch.
YearMonth parse_year_month(std::string_view text, std::string_view format = "YYYY-MM");

}  // namespace its
