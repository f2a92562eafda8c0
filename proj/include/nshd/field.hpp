#pragma once

#include <vector>

#include "nshd/fft.hpp"
#include "nshd/lattice.hpp"

namespace nshd {

/// n complex coefficient arrays over a lattice, plus the simulation time.
struct SpectralVectorField {
  LatticePtr lattice;
  std::vector<ComplexArray> coeffs;
  double time = 0.0;

  SpectralVectorField() = default;
  explicit SpectralVectorField(LatticePtr lat, double t = 0.0);

  int dim() const { return lattice->dim(); }
  std::size_t size() const { return lattice->total_modes(); }

  /// Largest |coeff| over all components and modes.
  double max_amplitude() const;
  bool all_finite() const;
};

/// Real velocity samples on the uniform N^n grid x_j = 2*pi*i_j/N.
struct PhysicalVectorField {
  LatticePtr lattice;
  std::vector<std::vector<double>> values;

  PhysicalVectorField() = default;
  explicit PhysicalVectorField(LatticePtr lat);

  /// Physical coordinate of grid point `index` along `axis`.
  double coordinate(int axis, std::size_t index) const;
};

SpectralVectorField to_spectral(const PhysicalVectorField& f);
PhysicalVectorField to_physical(const SpectralVectorField& u);

/// Scalar versions on a given lattice.
ComplexArray to_spectral(const WavenumberLattice& lat, std::span<const double> values);
std::vector<double> to_physical(const WavenumberLattice& lat, std::span<const Complex> coeffs);

/// max_k |c(-k) - conj(c(k))| over all components.
double hermitian_defect(const SpectralVectorField& u);

/// max_k |sum_j k_j c_j(k)|.
double divergence_defect(const SpectralVectorField& u);

/// sqrt(sum |a - b|^2) / sqrt(sum |b|^2); 0 when both are zero.
double relative_l2_difference(const SpectralVectorField& a, const SpectralVectorField& b);

}  // namespace nshd
