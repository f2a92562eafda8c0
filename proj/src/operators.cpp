#include "nshd/operators.hpp"

#include "nshd/errors.hpp"

namespace nshd {

SpectralVectorField leray_project(SpectralVectorField u) {
  const auto& lat = *u.lattice;
  const int n = lat.dim();
  for (std::size_t idx = 0; idx < lat.total_modes(); ++idx) {
    const double k2 = lat.kmod2(idx);
    if (k2 == 0.0) continue;
    Complex kdotu = 0.0;
    for (int j = 0; j < n; ++j) kdotu += lat.k_component(j, idx) * u.coeffs[j][idx];
    const Complex factor = kdotu / k2;
    for (int j = 0; j < n; ++j) u.coeffs[j][idx] -= lat.k_component(j, idx) * factor;
  }
  return u;
}

ComplexArray spectral_derivative(const WavenumberLattice& lat, std::span<const Complex> f, int axis) {
  if (axis < 0 || axis >= lat.dim()) throw InvalidArgument("derivative axis out of range");
  ComplexArray out(f.size());
  const auto& k = lat.k_components(axis);
  // i k f, written out to stay off the generic complex-multiply path.
  for (std::size_t idx = 0; idx < f.size(); ++idx) out[idx] = Complex(-k[idx] * f[idx].imag(), k[idx] * f[idx].real());
  return out;
}

ComplexArray spectral_derivative(const SpectralVectorField& u, int component, int axis) {
  if (component < 0 || component >= u.dim()) throw InvalidArgument("component out of range");
  return spectral_derivative(*u.lattice, u.coeffs[component], axis);
}

void dealias_in_place(const WavenumberLattice& lat, ComplexArray& f) {
  for (std::size_t idx = 0; idx < f.size(); ++idx)
    if (!lat.dealias_mask(idx)) f[idx] = 0.0;
}

SpectralVectorField dealias(SpectralVectorField u) {
  for (auto& c : u.coeffs) dealias_in_place(*u.lattice, c);
  return u;
}

SpectralVectorField vorticity(const SpectralVectorField& u) {
  const auto& lat = *u.lattice;
  if (lat.dim() == 2) {
    SpectralVectorField w;
    w.lattice = u.lattice;
    w.time = u.time;
    ComplexArray dxv = spectral_derivative(u, 1, 0);
    const ComplexArray dyu = spectral_derivative(u, 0, 1);
    for (std::size_t idx = 0; idx < dxv.size(); ++idx) dxv[idx] -= dyu[idx];
    w.coeffs.push_back(std::move(dxv));
    return w;
  }
  if (lat.dim() == 3) {
    SpectralVectorField w(u.lattice, u.time);
    for (int i = 0; i < 3; ++i) {
      const int a = (i + 1) % 3;
      const int b = (i + 2) % 3;
      // w_i = d_a u_b - d_b u_a
      const ComplexArray t1 = spectral_derivative(u, b, a);
      const ComplexArray t2 = spectral_derivative(u, a, b);
      for (std::size_t idx = 0; idx < t1.size(); ++idx) w.coeffs[i][idx] = t1[idx] - t2[idx];
    }
    return w;
  }
  throw InvalidArgument("vorticity is defined for n = 2 or 3 only");
}

std::vector<std::vector<std::vector<double>>> physical_gradient(const SpectralVectorField& u) {
  const int n = u.dim();
  std::vector<std::vector<std::vector<double>>> grad(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    grad[i].resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) grad[i][j] = to_physical(*u.lattice, spectral_derivative(u, i, j));
  }
  return grad;
}

}  // namespace nshd
