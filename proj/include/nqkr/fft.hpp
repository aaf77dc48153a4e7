#pragma once

#include <memory>
#include <span>

#include "nqkr/model.hpp"

namespace nqkr {

// Unnormalized complex DFT pair of a fixed length, backed by FFTW.
// Plans are created under a process-wide lock; execution on caller buffers
// is safe from any thread.
class FourierTransform {
 public:
  explicit FourierTransform(int n);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;
  FourierTransform(FourierTransform&&) noexcept;
  FourierTransform& operator=(FourierTransform&&) noexcept;

  int size() const;

  // data[k] <- sum_j data[j] e^{-2 pi i jk/n}
  void forward(std::span<Complex> data) const;
  // data[k] <- sum_j data[j] e^{+2 pi i jk/n}
  void backward(std::span<Complex> data) const;

 private:
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

// Momentum amplitudes (ascending n) -> angle samples f_j, in place.
void to_angle(std::span<Complex> data, const FourierTransform& fft);
// Angle samples f_j -> momentum amplitudes (ascending n), in place.
void to_momentum(std::span<Complex> data, const FourierTransform& fft);

}  // namespace nqkr
