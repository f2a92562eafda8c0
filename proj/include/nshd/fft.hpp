#pragma once

#include <complex>
#include <span>
#include <vector>

namespace nshd {

using Complex = std::complex<double>;
using ComplexArray = std::vector<Complex>;

/// FFTW-backed transforms between real grid samples and the full complex
/// coefficient array for one lattice shape.
///
/// Plans are created once (planner calls are serialized process-wide) and
/// executed on per-thread aligned scratch, so `forward` and `inverse` are
/// safe to call concurrently.
class SpectralTransform {
 public:
  SpectralTransform(int n, int N);
  ~SpectralTransform();
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  /// Fourier-series coefficients: c(k) = N^{-n} sum_x f(x) e^{-i k.x}.
  ComplexArray forward(std::span<const double> values) const;
  /// Real part of sum_k c(k) e^{i k.x}.
  std::vector<double> inverse(std::span<const Complex> coeffs) const;

  std::size_t size() const { return size_; }

 private:
  std::size_t size_;
  void* forward_plan_;
  void* backward_plan_;
};

}  // namespace nshd
