#pragma once

#include "nshd/field.hpp"
#include "nshd/rational.hpp"

namespace nshd {

/// Ladyzhenskaya-Lions exponent (2 + n)/4. Throws InvalidArgument for n < 2.
Rational lions_exponent(int n);

enum class Criticality { subcritical, critical, supercritical };

const char* to_string(Criticality c);

template <typename T>
struct SolvabilityMargin {
  T margin;  // 2 alpha - 1 - n/2
  Criticality classification;
};

/// Exact classification for rational alpha.
SolvabilityMargin<Rational> solvability_margin(int n, const Rational& alpha);
/// Floating classification; "critical" only when the margin is exactly 0.
SolvabilityMargin<double> solvability_margin(int n, double alpha);

/// Amplitude rescaling u_lambda(x,t) = u(x/mu, t/tau)/lambda of a solution.
struct ScaleTransform {
  double lambda;
  double alpha;
  int n;
  double mu;   // lambda^{1/(2 alpha - 1)}
  double tau;  // lambda^{2 alpha/(2 alpha - 1)}
  /// E_q = q^{energy_exponent_q} E with q = 1/mu.
  double energy_exponent_q;
  /// E_lambda = lambda^{energy_exponent_lambda} E = n/(2 alpha - 1) - 2.
  double energy_exponent_lambda;
};

/// Throws DegenerateScaling for alpha <= 1/2 and InvalidArgument for lambda <= 0.
ScaleTransform make_scale_transform(double lambda, double alpha, int n);

/// u_q(x,t) = q^{2 alpha - 1} u(q x, q^{2 alpha} t): c'(q k) = q^{2 alpha - 1} c(k).
/// The returned field time is u.time / q^{2 alpha}. Throws RescaleOverflow if
/// q k would leave the dealiased band.
SpectralVectorField apply_discrete_rescale(const SpectralVectorField& u, int q, double alpha);

struct TruncatedRescale {
  SpectralVectorField field;
  double dropped_l2 = 0.0;  // l2 norm of the scaled coefficients that overflowed
};

/// Like apply_discrete_rescale, but drops overflowing modes and reports
/// their norm instead of throwing. Evolved fields carry round-off at every
/// retained mode, which the strict form would reject.
TruncatedRescale apply_discrete_rescale_truncating(const SpectralVectorField& u, int q,
                                                   double alpha);

/// E(u_q) q^{-n} / E(u). The q^{-n} factor supplies the Jacobian of
/// x -> q x that the fixed torus lacks, so the result is q^{4 alpha - 2 - n}.
double scaled_energy_ratio(const SpectralVectorField& u, int q, double alpha);

/// L1 moment of |k|^ell f(k) for f(k) = sigma^{n/2} exp(-sigma^2 |k|^2/2) on R^n.
double gaussian_moment(int n, double ell, double sigma);

/// The same moment by adaptive Gauss-Kronrod quadrature of the radial integral.
double gaussian_moment_quadrature(int n, double ell, double sigma);

/// M_ell / M_m^{(ell + n/2)/(m + n/2)} on the L2-normalized Gaussian family.
double lemma1_ratio(int n, double ell, double m, double sigma);

}  // namespace nshd
