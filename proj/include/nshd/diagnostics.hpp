#pragma once

#include <span>
#include <vector>

#include "nshd/diagnostics_record.hpp"
#include "nshd/dynamics.hpp"
#include "nshd/field.hpp"

namespace nshd {

// All quadratic quantities use the torus Parseval form
// int |f|^2 dx = (2 pi)^n sum_k |c(k)|^2.

double energy(const SpectralVectorField& u);
double dissipation_rate(const SpectralVectorField& u, double alpha, double nu);

/// sum_k |k|^order |c(k)| over every mode (plain mode sum, no dk weight).
double moment_norm(const WavenumberLattice& lat, std::span<const Complex> c, double order);
double moment_norm(const SpectralVectorField& u, int component, double order);

double enstrophy(const SpectralVectorField& u);
/// <omega . grad u, omega> by grid quadrature for n = 3; identically 0 for n = 2.
double enstrophy_production(const SpectralVectorField& u);

/// Inhomogeneous norm sqrt((2 pi)^n sum (1+|k|^2)^beta |u(k)|^2).
double sobolev_norm(const SpectralVectorField& u, double beta);

/// max_x |u(x)| on the grid.
double max_velocity(const SpectralVectorField& u);

/// Fraction of the energy in the shell N/3 - 1 <= |k| < N/3.
double tail_fraction(const SpectralVectorField& u);

/// Orders stored in every record: the configured m, m + 1, 2 alpha + m,
/// and 1 (for sweep summaries), ascending and deduplicated.
std::vector<double> record_moment_orders(const SolverConfig& cfg);

DiagnosticsRecord make_record(const SolverState& state, const SolverConfig& cfg, double dt);

inline constexpr double kResolutionLossThreshold = 1e-6;

/// diverged: any non-finite value in the record; resolution_loss:
/// tail_fraction above kResolutionLossThreshold. Neither certifies a
/// genuine singularity.
DiagnosticFlags blowup_indicator(const DiagnosticsRecord& record);

struct Prop1Evaluation {
  double t = 0.0;
  double lhs = 0.0;         // d/dt M_m(u_i), finite difference
  double nonlinear = 0.0;   // sum_j sum_l binom(m,l) M_l(u_j) M_{m-l+1}(u_i)
  double dissipative = 0.0; // nu M_{2 alpha + m}(u_i)
  double pressure = 0.0;    // C_{i,m}
  double rhs = 0.0;
  double residual = 0.0;    // rhs - lhs
  double tol = 0.0;
  bool one_sided = false;
  bool satisfied = false;
};

/// Evaluates the moment inequality at the middle record of `window`
/// (at least three consecutive records). Throws NotEnoughSamples.
Prop1Evaluation prop1_residual(std::span<const DiagnosticsRecord> window, int component, int m,
                               double alpha, double nu);

/// prop1_residual at every record; the two ends use one-sided differences
/// and are flagged.
std::vector<Prop1Evaluation> prop1_series(std::span<const DiagnosticsRecord> records, int component,
                                          int m, double alpha, double nu);

struct MaxNormBound {
  int component = 0;
  int axis = -1;  // -1 when beta_total == 0
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// ||d_axis^beta_total u_i||_inf against M_beta_total(u_i) for every
/// component and pure-axis multi-index.
std::vector<MaxNormBound> lemma2_bound_check(const SpectralVectorField& u, int beta_total);

}  // namespace nshd
