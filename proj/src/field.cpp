#include "nshd/field.hpp"

#include <cmath>

#include "nshd/errors.hpp"

namespace nshd {

SpectralVectorField::SpectralVectorField(LatticePtr lat, double t)
    : lattice(std::move(lat)),
      coeffs(static_cast<std::size_t>(lattice->dim()), ComplexArray(lattice->total_modes())),
      time(t) {}

double SpectralVectorField::max_amplitude() const {
  double m = 0.0;
  for (const auto& c : coeffs)
    for (const auto& z : c) m = std::max(m, std::abs(z));
  return m;
}

bool SpectralVectorField::all_finite() const {
  for (const auto& c : coeffs)
    for (const auto& z : c)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

PhysicalVectorField::PhysicalVectorField(LatticePtr lat)
    : lattice(std::move(lat)),
      values(static_cast<std::size_t>(lattice->dim()),
             std::vector<double>(lattice->total_modes())) {}

double PhysicalVectorField::coordinate(int axis, std::size_t index) const {
  const int N = lattice->modes_per_axis();
  for (int a = lattice->dim() - 1; a > axis; --a) index /= static_cast<std::size_t>(N);
  return lattice->grid_spacing() * static_cast<double>(index % static_cast<std::size_t>(N));
}

ComplexArray to_spectral(const WavenumberLattice& lat, std::span<const double> values) {
  if (values.size() != lat.total_modes()) throw InvalidArgument("field size does not match lattice");
  return lat.transform().forward(values);
}

std::vector<double> to_physical(const WavenumberLattice& lat, std::span<const Complex> coeffs) {
  if (coeffs.size() != lat.total_modes()) throw InvalidArgument("field size does not match lattice");
  return lat.transform().inverse(coeffs);
}

SpectralVectorField to_spectral(const PhysicalVectorField& f) {
  SpectralVectorField u(f.lattice);
  for (std::size_t i = 0; i < f.values.size(); ++i) u.coeffs[i] = to_spectral(*f.lattice, f.values[i]);
  return u;
}

PhysicalVectorField to_physical(const SpectralVectorField& u) {
  PhysicalVectorField f(u.lattice);
  for (std::size_t i = 0; i < u.coeffs.size(); ++i) f.values[i] = to_physical(*u.lattice, u.coeffs[i]);
  return f;
}

double hermitian_defect(const SpectralVectorField& u) {
  const auto& lat = *u.lattice;
  double worst = 0.0;
  for (const auto& c : u.coeffs) {
    for (std::size_t idx = 0; idx < lat.total_modes(); ++idx) {
      const std::size_t mirror = lat.mirror_index(idx);
      worst = std::max(worst, std::abs(c[mirror] - std::conj(c[idx])));
    }
  }
  return worst;
}

double divergence_defect(const SpectralVectorField& u) {
  const auto& lat = *u.lattice;
  double worst = 0.0;
  for (std::size_t idx = 0; idx < lat.total_modes(); ++idx) {
    Complex div = 0.0;
    for (int j = 0; j < lat.dim(); ++j) div += lat.k_component(j, idx) * u.coeffs[j][idx];
    worst = std::max(worst, std::abs(div));
  }
  return worst;
}

double relative_l2_difference(const SpectralVectorField& a, const SpectralVectorField& b) {
  if (a.coeffs.size() != b.coeffs.size() || a.size() != b.size()) {
    throw InvalidArgument("fields live on different lattices");
  }
  double diff = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    for (std::size_t idx = 0; idx < a.size(); ++idx) {
      diff += std::norm(a.coeffs[i][idx] - b.coeffs[i][idx]);
      ref += std::norm(b.coeffs[i][idx]);
    }
  }
  if (ref == 0.0) return diff == 0.0 ? 0.0 : std::sqrt(diff);
  return std::sqrt(diff / ref);
}

}  // namespace nshd
