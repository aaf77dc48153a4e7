#include "nqkr/csv.hpp"

#include <charconv>
#include <cmath>

namespace nqkr {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::ostream& operator<<(std::ostream& os, Num n) {
  return os << format_number(n.value);
}

}  // namespace nqkr
