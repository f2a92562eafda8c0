#include "nshd/lattice.hpp"

#include <cmath>
#include <string>

#include "nshd/errors.hpp"
#include "nshd/fft.hpp"

namespace nshd {

WavenumberLattice::WavenumberLattice(int n, int N) : n_(n), N_(N) {
  if (n != 2 && n != 3) {
    throw InvalidArgument("lattice dimension must be 2 or 3, got " + std::to_string(n));
  }
  if (N % 2 != 0) {
    throw InvalidArgument("modes per axis must be even, got " + std::to_string(N));
  }
  if (N < 8 || N > 512) {
    throw InvalidArgument("modes per axis must lie in [8, 512], got " + std::to_string(N));
  }

  total_ = 1;
  for (int a = 0; a < n_; ++a) total_ *= static_cast<std::size_t>(N_);

  for (int a = 0; a < 3; ++a) kcomp_[a].assign(total_, 0.0);
  kmod_.resize(total_);
  kmod2_.resize(total_);
  mask_.resize(total_);

  for (std::size_t idx = 0; idx < total_; ++idx) {
    const ModeVector k = k_of(idx);
    double k2 = 0.0;
    bool keep = true;
    for (int a = 0; a < n_; ++a) {
      kcomp_[a][idx] = k[a];
      k2 += static_cast<double>(k[a]) * k[a];
      // |k_a| < N/3 without rounding.
      if (3 * std::abs(k[a]) >= N_) keep = false;
    }
    kmod2_[idx] = k2;
    kmod_[idx] = std::sqrt(k2);
    mask_[idx] = keep ? 1 : 0;
  }

  transform_ = std::make_unique<SpectralTransform>(n_, N_);
}

WavenumberLattice::~WavenumberLattice() = default;

ModeVector WavenumberLattice::k_of(std::size_t index) const {
  ModeVector k{0, 0, 0};
  for (int a = n_ - 1; a >= 0; --a) {
    const int slot = static_cast<int>(index % static_cast<std::size_t>(N_));
    index /= static_cast<std::size_t>(N_);
    k[a] = axis_mode(slot);
  }
  return k;
}

std::size_t WavenumberLattice::index_of(const ModeVector& k) const {
  std::size_t idx = 0;
  for (int a = 0; a < n_; ++a) {
    const int slot = ((k[a] % N_) + N_) % N_;
    idx = idx * static_cast<std::size_t>(N_) + static_cast<std::size_t>(slot);
  }
  return idx;
}

std::size_t WavenumberLattice::mirror_index(std::size_t index) const {
  ModeVector k = k_of(index);
  for (int a = 0; a < n_; ++a) k[a] = -k[a];
  return index_of(k);
}

int WavenumberLattice::max_retained_component() const {
  // Largest integer k with 3k < N.
  return (N_ - 1) / 3;
}

LatticePtr build_lattice(int n, int N) { return std::make_shared<const WavenumberLattice>(n, N); }

}  // namespace nshd
