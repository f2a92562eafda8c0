#pragma once

// Independent reference computations for the unit tests. Nothing here
// calls the library's transforms or operators.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "nshd/field.hpp"
#include "nshd/lattice.hpp"

namespace oracle {

using nshd::Complex;

inline constexpr double pi = std::numbers::pi;

/// Grid point of flat index `idx` (axis 0 slowest).
inline std::array<double, 3> grid_point(const nshd::WavenumberLattice& lat, std::size_t idx) {
  std::array<double, 3> x{0, 0, 0};
  const int N = lat.modes_per_axis();
  for (int a = lat.dim() - 1; a >= 0; --a) {
    x[a] = lat.grid_spacing() * static_cast<double>(idx % N);
    idx /= N;
  }
  return x;
}

/// Samples f on the grid.
inline std::vector<double> sample(const nshd::WavenumberLattice& lat,
                                  const std::function<double(double, double, double)>& f) {
  std::vector<double> v(lat.total_modes());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto x = grid_point(lat, i);
    v[i] = f(x[0], x[1], x[2]);
  }
  return v;
}

/// Direct O(N^{2n}) evaluation of c(k) = N^{-n} sum_x f(x) e^{-i k.x}.
inline Complex naive_coefficient(const nshd::WavenumberLattice& lat, const std::vector<double>& f,
                                 const nshd::ModeVector& k) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto x = grid_point(lat, i);
    double phase = 0.0;
    for (int a = 0; a < lat.dim(); ++a) phase += k[a] * x[a];
    s += f[i] * std::polar(1.0, -phase);
  }
  return s / static_cast<double>(lat.total_modes());
}

/// Trapezoid quadrature of a grid function over the torus.
inline double quadrature(const nshd::WavenumberLattice& lat, const std::vector<double>& f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s * std::pow(lat.grid_spacing(), lat.dim());
}

/// Central finite difference with step h.
inline double central_difference(double fm, double fp, double h) { return (fp - fm) / (2.0 * h); }

/// Fitted order from errors at successive dt halvings.
inline double observed_order(double e_coarse, double e_fine) { return std::log2(e_coarse / e_fine); }

}  // namespace oracle
