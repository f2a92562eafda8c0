#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nshd/diagnostics_record.hpp"
#include "nshd/field.hpp"

namespace nshd {

/// Deliberate defects used by the verification suite's mutation fixtures.
struct FaultInjection {
  bool flip_dissipation_sign = false;
  bool skip_dealias = false;
};

struct SolverConfig {
  int n = 2;
  int N = 64;
  double alpha = 1.0;
  double nu = 1.0;
  double t_end = 1.0;
  double cfl_safety = 0.5;
  double dt_max = 0.1;
  bool inviscid = false;
  int diag_stride = 10;
  std::vector<int> moment_orders{0, 1, 2};
  std::vector<double> sobolev_orders{0.0, 1.0};

  /// Turns the advective term off; the step then reduces to exact decay.
  bool nonlinear = true;
  FaultInjection fault;

  /// Throws InvalidArgument naming the offending field.
  void validate() const;
};

struct SolverState {
  SpectralVectorField u;
  double t = 0.0;
  std::uint64_t step_count = 0;
};

/// -P[(u.grad)u], evaluated pseudo-spectrally with 2/3 dealiasing.
SpectralVectorField nonlinear_term(const SpectralVectorField& u, bool apply_dealias = true);

/// Pressure from -lap p = sum_ij (d_i u_j)(d_j u_i); p(0) = 0.
ComplexArray compute_pressure(const SpectralVectorField& u);
ComplexArray compute_pressure(const WavenumberLattice& lat,
                              const std::vector<std::vector<std::vector<double>>>& grad);

/// nu |k|^{2 alpha} per mode, 0 at k = 0.
std::vector<double> dissipation_symbol(const WavenumberLattice& lat, double alpha, double nu);

/// Integrating-factor RK4 for one configuration.
///
/// The linear part nu|k|^{2 alpha} is integrated exactly; classical RK4 is
/// applied to v = e^{nu|k|^{2 alpha} t} u.
class Stepper {
 public:
  Stepper(const SolverConfig& cfg, LatticePtr lattice);

  /// Throws Diverged when a coefficient becomes non-finite.
  SolverState step(const SolverState& state, double dt) const;

  /// The symbol actually used (zero when inviscid, negated under fault).
  const std::vector<double>& symbol() const { return symbol_; }

 private:
  SpectralVectorField rhs(const SpectralVectorField& u) const;

  SolverConfig cfg_;
  LatticePtr lattice_;
  std::vector<double> symbol_;
};

SolverState step(const SolverState& state, double dt, const SolverConfig& cfg);

/// cfl_safety * dx / max_j ||u_j||_inf, clamped to dt_max.
double cfl_dt(const SpectralVectorField& u, const SolverConfig& cfg);

/// Fixed-step integration; used where trajectories must be reproduced
/// with a prescribed step (rescaling, convergence studies).
SolverState integrate(SolverState state, const SolverConfig& cfg, double dt, std::uint64_t steps);

enum class RunStatus { completed, diverged, resolution_loss };

const char* to_string(RunStatus status);

struct AdvanceResult {
  SolverState state;
  RunStatus status = RunStatus::completed;
};

/// advance() reports divergence once the CFL step falls below this
/// fraction of t_end.
inline constexpr double kStepCollapseFraction = 1e-9;

using DiagnosticsSink = std::function<void(const DiagnosticsRecord&)>;

/// Steps with cfl_dt until t_end, emitting a record at the start, every
/// diag_stride steps, and at t_end. Divergence ends the run with a final
/// record flagged `diverged`, as does a collapsing CFL step.
AdvanceResult advance(SolverState state, const SolverConfig& cfg, const DiagnosticsSink& sink);

}  // namespace nshd
