#include "nshd/fft.hpp"

#include <fftw3.h>

#include <array>
#include <cstring>
#include <memory>
#include <mutex>

namespace nshd {

namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};

// Per-thread aligned scratch. fftw_malloc guarantees the alignment the
// plans were created with, so new-array execution picks the same codelets
// on every call and results are reproducible bit for bit.
fftw_complex* scratch(std::size_t size) {
  thread_local std::unique_ptr<fftw_complex, FftwFree> buf;
  thread_local std::size_t capacity = 0;
  if (capacity < size) {
    buf.reset(fftw_alloc_complex(size));
    capacity = size;
  }
  return buf.get();
}

}  // namespace

SpectralTransform::SpectralTransform(int n, int N) {
  std::array<int, 3> dims{N, N, N};
  size_ = 1;
  for (int a = 0; a < n; ++a) size_ *= static_cast<std::size_t>(N);

  std::lock_guard lock(planner_mutex());
  fftw_complex* buf = fftw_alloc_complex(size_);
  forward_plan_ = fftw_plan_dft(n, dims.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft(n, dims.data(), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_free(buf);
}

SpectralTransform::~SpectralTransform() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
}

ComplexArray SpectralTransform::forward(std::span<const double> values) const {
  fftw_complex* buf = scratch(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    buf[i][0] = values[i];
    buf[i][1] = 0.0;
  }
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), buf, buf);
  const double scale = 1.0 / static_cast<double>(size_);
  ComplexArray out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = Complex(buf[i][0] * scale, buf[i][1] * scale);
  return out;
}

std::vector<double> SpectralTransform::inverse(std::span<const Complex> coeffs) const {
  fftw_complex* buf = scratch(size_);
  std::memcpy(buf, coeffs.data(), size_ * sizeof(fftw_complex));
  fftw_execute_dft(static_cast<fftw_plan>(backward_plan_), buf, buf);
  std::vector<double> out(size_);
  for (std::size_t i = 0; i < size_; ++i) out[i] = buf[i][0];
  return out;
}

}  // namespace nshd
