#pragma once

#include <cmath>

namespace nqkr {

// Neumaier-compensated running sum. Moments over the momentum lattice mix
// weights spanning many decades with large p^2 factors.
class CompensatedSum {
 public:
  void add(double value) {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      carry_ += (sum_ - t) + value;
    } else {
      carry_ += (value - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double value) {
    add(value);
    return *this;
  }

  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace nqkr
