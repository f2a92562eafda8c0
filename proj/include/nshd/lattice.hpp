#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <vector>

namespace nshd {

class SpectralTransform;

/// Integer wavevector; unused trailing components are zero when n = 2.
using ModeVector = std::array<int, 3>;

/// Discrete Fourier grid on the torus [0, 2*pi)^n.
///
/// Flat indices are row-major with axis 0 slowest. Each axis uses the
/// standard FFT ordering 0, 1, ..., N/2-1, -N/2, ..., -1. The lattice owns
/// the FFT plans for its shape and is shared, immutable, between fields.
class WavenumberLattice {
 public:
  WavenumberLattice(int n, int N);
  ~WavenumberLattice();
  WavenumberLattice(const WavenumberLattice&) = delete;
  WavenumberLattice& operator=(const WavenumberLattice&) = delete;

  int dim() const { return n_; }
  int modes_per_axis() const { return N_; }
  std::size_t total_modes() const { return total_; }
  double domain_length() const { return 2.0 * std::numbers::pi; }
  double grid_spacing() const { return domain_length() / N_; }

  ModeVector k_of(std::size_t index) const;
  std::size_t index_of(const ModeVector& k) const;
  /// Index of -k (Nyquist components map onto themselves).
  std::size_t mirror_index(std::size_t index) const;

  double k_component(int axis, std::size_t index) const { return kcomp_[axis][index]; }
  const std::vector<double>& k_components(int axis) const { return kcomp_[axis]; }
  double kmod(std::size_t index) const { return kmod_[index]; }
  double kmod2(std::size_t index) const { return kmod2_[index]; }
  const std::vector<double>& kmod2_all() const { return kmod2_; }

  /// True iff every |k_j| < N/3.
  bool dealias_mask(std::size_t index) const { return mask_[index] != 0; }
  /// Largest integer |k_j| that survives dealiasing.
  int max_retained_component() const;

  /// Integer axis mode for a per-axis FFT slot.
  int axis_mode(int slot) const { return slot < N_ / 2 ? slot : slot - N_; }

  const SpectralTransform& transform() const { return *transform_; }

 private:
  int n_;
  int N_;
  std::size_t total_;
  std::array<std::vector<double>, 3> kcomp_;
  std::vector<double> kmod_;
  std::vector<double> kmod2_;
  std::vector<std::uint8_t> mask_;
  std::unique_ptr<SpectralTransform> transform_;
};

using LatticePtr = std::shared_ptr<const WavenumberLattice>;

/// Throws InvalidArgument unless n is 2 or 3 and N is even in [8, 512].
LatticePtr build_lattice(int n, int N);

}  // namespace nshd
