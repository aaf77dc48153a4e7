#pragma once

#include <ostream>
#include <string>

namespace nqkr {

// Shortest decimal form that parses back to the identical double; "nan",
// "inf" and "-inf" for non-finite values.
std::string format_number(double value);

// Writes `value` using format_number.
struct Num {
  double value;
};
std::ostream& operator<<(std::ostream& os, Num n);

}  // namespace nqkr
