#pragma once

#include <stdexcept>
#include <string>

namespace nqkr {

// Argument outside the declared domain of a numeric routine.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Unscaled result not representable as a finite double.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Momentum lattice too small: probability leaked into the edge band.
class ResolutionError : public std::runtime_error {
 public:
  ResolutionError(const std::string& what, long t, double tail_mass)
      : std::runtime_error(what), t_(t), tail_mass_(tail_mass) {}

  long t() const { return t_; }
  double tail_mass() const { return tail_mass_; }

 private:
  long t_;
  double tail_mass_;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Observable series not sampled at unit spacing.
class SpacingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace nqkr
