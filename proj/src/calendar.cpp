#include "its/calendar.hpp"

#include <cstdio>

#include "its/error.hpp"

namespace its {

std::string YearMonth::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

namespace {

bool read_digits(std::string_view text, std::size_t pos, std::size_t count, int& out) {
  if (pos + count > text.size()) return false;
  int value = 0;
  for (std::size_t i = 0; i < count; ++i) {
    char c = text[pos + i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  return true;
}

}  // namespace

YearMonth parse_year_month(std::string_view text, std::string_view format) {
  auto fail = [&] {
    return Error(ErrorCode::Parse,
                 "cannot parse '" + std::string(text) + "' as year-month with format '" +
                     std::string(format) + "'");
  };
  int year = -1, month = -1;
  std::size_t pos = 0;
  std::size_t f = 0;
  while (f < format.size()) {
    std::string_view rest = format.substr(f);
    int value = 0;
    if (rest.size() >= 2 && rest[0] == '\\') {
      if (pos >= text.size() || text[pos] != rest[1]) throw fail();
      ++pos;
      f += 2;
    } else if (rest.starts_with("YYYY")) {
      if (!read_digits(text, pos, 4, value)) throw fail();
      year = value;
      pos += 4;
      f += 4;
    } else if (rest.starts_with("MM")) {
      if (!read_digits(text, pos, 2, value)) throw fail();
      month = value;
      pos += 2;
      f += 2;
    } else if (rest.starts_with("DD")) {
      if (!read_digits(text, pos, 2, value) || value < 1 || value > 31) throw fail();
      pos += 2;
      f += 2;
    } else {
      if (pos >= text.size() || text[pos] != format[f]) throw fail();
      ++pos;
      ++f;
    }
  }
  if (pos != text.size() || year < 0 || month < 1 || month > 12) throw fail();
  return YearMonth{year, month};
}

}  // namespace its
