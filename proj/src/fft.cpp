#include "nqkr/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "nqkr/errors.hpp"

namespace nqkr {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::span<Complex> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

void flip_odd(std::span<Complex> data) {
  for (std::size_t i = 1; i < data.size(); i += 2) data[i] = -data[i];
}

}  // namespace

struct FourierTransform::Plans {
  int n = 0;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

FourierTransform::FourierTransform(int n) : plans_(std::make_unique<Plans>()) {
  if (n <= 0) throw DomainError("FourierTransform: length must be positive");
  plans_->n = n;
  std::vector<Complex> scratch(static_cast<std::size_t>(n));
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  // In-place, unaligned plans so that fftw_execute_dft can run on any
  // caller-owned std::vector<std::complex<double>>.
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  plans_->forward = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, flags);
  plans_->backward = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, flags);
  if (!plans_->forward || !plans_->backward) {
    throw std::runtime_error("FourierTransform: FFTW planning failed");
  }
}

FourierTransform::~FourierTransform() = default;
FourierTransform::FourierTransform(FourierTransform&&) noexcept = default;
FourierTransform& FourierTransform::operator=(FourierTransform&&) noexcept =
    default;

int FourierTransform::size() const { return plans_->n; }

void FourierTransform::forward(std::span<Complex> data) const {
  if (static_cast<int>(data.size()) != plans_->n) {
    throw DomainError("FourierTransform: buffer length mismatch");
  }
  fftw_execute_dft(plans_->forward, as_fftw(data), as_fftw(data));
}

void FourierTransform::backward(std::span<Complex> data) const {
  if (static_cast<int>(data.size()) != plans_->n) {
    throw DomainError("FourierTransform: buffer length mismatch");
  }
  fftw_execute_dft(plans_->backward, as_fftw(data), as_fftw(data));
}

// With theta_j = -pi + 2 pi j/N and n = k - N/2 (N/2 even):
//   e^{i n theta_j} = (-1)^k (-1)^j e^{2 pi i k j / N}.
void to_angle(std::span<Complex> data, const FourierTransform& fft) {
  flip_odd(data);
  fft.backward(data);
  flip_odd(data);
}

void to_momentum(std::span<Complex> data, const FourierTransform& fft) {
  flip_odd(data);
  fft.forward(data);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    data[k] *= (k % 2 == 0) ? scale : -scale;
  }
}

}  // namespace nqkr
