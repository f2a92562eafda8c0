#include "nshd/scaling.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nshd/diagnostics.hpp"
#include "nshd/errors.hpp"

namespace nshd {

Rational lions_exponent(int n) {
  if (n < 2) throw InvalidArgument("dimension must be >= 2, got " + std::to_string(n));
  return Rational(2 + n, 4);
}

const char* to_string(Criticality c) {
  switch (c) {
    case Criticality::subcritical: return "subcritical";
    case Criticality::critical: return "critical";
    case Criticality::supercritical: return "supercritical";
  }
  return "unknown";
}

namespace {

Criticality classify(int sign) {
  if (sign > 0) return Criticality::subcritical;
  if (sign < 0) return Criticality::supercritical;
  return Criticality::critical;
}

}  // namespace

SolvabilityMargin<Rational> solvability_margin(int n, const Rational& alpha) {
  if (n < 2) throw InvalidArgument("dimension must be >= 2, got " + std::to_string(n));
  const Rational margin = Rational(2) * alpha - Rational(1) - Rational(n, 2);
  return {margin, classify(margin.sign())};
}

SolvabilityMargin<double> solvability_margin(int n, double alpha) {
  if (n < 2) throw InvalidArgument("dimension must be >= 2, got " + std::to_string(n));
  const double margin = 2.0 * alpha - 1.0 - 0.5 * n;
  return {margin, classify((margin > 0.0) - (margin < 0.0))};
}

ScaleTransform make_scale_transform(double lambda, double alpha, int n) {
  if (!(alpha > 0.5)) throw DegenerateScaling("scale transform requires alpha > 1/2");
  if (!(lambda > 0.0)) throw InvalidArgument("scale factor lambda must be positive");
  const double s = 2.0 * alpha - 1.0;
  ScaleTransform st;
  st.lambda = lambda;
  st.alpha = alpha;
  st.n = n;
  st.mu = std::pow(lambda, 1.0 / s);
  st.tau = std::pow(lambda, 2.0 * alpha / s);
  st.energy_exponent_q = 4.0 * alpha - 2.0 - n;
  st.energy_exponent_lambda = n / s - 2.0;
  return st;
}

namespace {

// Shared body of the strict and truncating rescales. Returns the l2 norm
// (after amplitude scaling) of every coefficient that would overflow.
double rescale_into(const SpectralVectorField& u, int q, double alpha, bool strict,
                    SpectralVectorField& out) {
  if (q < 1) throw InvalidArgument("rescale factor q must be a positive integer");
  const auto& lat = *u.lattice;
  const int n = lat.dim();
  const int limit = lat.max_retained_component();
  const double amp = std::pow(static_cast<double>(q), 2.0 * alpha - 1.0);

  out = SpectralVectorField(u.lattice, u.time / std::pow(static_cast<double>(q), 2.0 * alpha));
  double dropped = 0.0;
  for (std::size_t idx = 0; idx < lat.total_modes(); ++idx) {
    bool active = false;
    for (const auto& c : u.coeffs) active = active || c[idx] != Complex(0.0);
    if (!active) continue;
    ModeVector k = lat.k_of(idx);
    bool overflow = false;
    for (int a = 0; a < n; ++a) {
      k[a] *= q;
      overflow = overflow || std::abs(k[a]) > limit;
    }
    if (overflow) {
      if (strict) {
        throw RescaleOverflow("rescaled mode leaves the dealiased band (q=" + std::to_string(q) + ")");
      }
      for (const auto& c : u.coeffs) dropped += std::norm(amp * c[idx]);
      continue;
    }
    const std::size_t target = lat.index_of(k);
    for (int i = 0; i < n; ++i) out.coeffs[i][target] = amp * u.coeffs[i][idx];
  }
  return std::sqrt(dropped);
}

}  // namespace

SpectralVectorField apply_discrete_rescale(const SpectralVectorField& u, int q, double alpha) {
  SpectralVectorField out;
  rescale_into(u, q, alpha, true, out);
  return out;
}

TruncatedRescale apply_discrete_rescale_truncating(const SpectralVectorField& u, int q,
                                                   double alpha) {
  TruncatedRescale r;
  r.dropped_l2 = rescale_into(u, q, alpha, false, r.field);
  return r;
}

double scaled_energy_ratio(const SpectralVectorField& u, int q, double alpha) {
  const double e = energy(u);
  if (e == 0.0) throw InvalidArgument("energy ratio undefined for the zero field");
  const auto uq = apply_discrete_rescale(u, q, alpha);
  // On R^n the change of variables x -> q x contributes q^{-n}; the torus
  // keeps its volume, so the factor is applied explicitly.
  return energy(uq) * std::pow(static_cast<double>(q), -u.dim()) / e;
}

namespace {

double sphere_area(int n) {
  // Surface area of the unit sphere S^{n-1} in R^n.
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

}  // namespace

double gaussian_moment(int n, double ell, double sigma) {
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  const double p = ell + n;
  return std::pow(sigma, 0.5 * n) * sphere_area(n) * std::pow(2.0, 0.5 * (p - 2.0)) *
         std::tgamma(0.5 * p) * std::pow(sigma, -p);
}

double gaussian_moment_quadrature(int n, double ell, double sigma) {
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
  using boost::math::quadrature::gauss_kronrod;
  auto radial = [&](double r) {
    return std::pow(r, ell + n - 1) * std::exp(-0.5 * sigma * sigma * r * r);
  };
  double err = 0.0;
  const double integral = gauss_kronrod<double, 31>::integrate(
      radial, 0.0, std::numeric_limits<double>::infinity(), 25, 1e-14, &err);
  return std::pow(sigma, 0.5 * n) * sphere_area(n) * integral;
}

double lemma1_ratio(int n, double ell, double m, double sigma) {
  if (ell < 0.0 || ell > m) throw InvalidArgument("lemma1_ratio requires 0 <= ell <= m");
  const double exponent = (ell + 0.5 * n) / (m + 0.5 * n);
  return gaussian_moment(n, ell, sigma) / std::pow(gaussian_moment(n, m, sigma), exponent);
}

}  // namespace nshd
