#include "nshd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nshd/diagnostics.hpp"
#include "nshd/errors.hpp"
#include "nshd/operators.hpp"

namespace nshd {

void SolverConfig::validate() const {
  auto fail = [](const std::string& field, const std::string& what) {
    throw InvalidArgument(field + ": " + what);
  };
  if (n != 2 && n != 3) fail("n", "must be 2 or 3 for time stepping");
  if (N % 2 != 0) fail("N", "must be even");
  if (N < 8 || N > 512) fail("N", "must lie in [8, 512]");
  if (!inviscid && !(alpha > 0.0)) fail("alpha", "must be > 0 unless inviscid");
  if (!inviscid && !(nu > 0.0)) fail("nu", "must be > 0 unless inviscid");
  if (!std::isfinite(alpha)) fail("alpha", "must be finite");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) fail("t_end", "must be finite and >= 0");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) fail("cfl_safety", "must lie in (0, 1]");
  if (!(dt_max > 0.0) || !std::isfinite(dt_max)) fail("dt_max", "must be finite and > 0");
  if (diag_stride < 1) fail("diag_stride", "must be >= 1");
  for (int m : moment_orders)
    if (m < 0) fail("moment_orders", "orders must be non-negative integers");
  for (double b : sobolev_orders)
    if (!std::isfinite(b)) fail("sobolev_orders", "orders must be finite");
}

SpectralVectorField nonlinear_term(const SpectralVectorField& u, bool apply_dealias) {
  const auto& lat = *u.lattice;
  const int n = lat.dim();
  const std::size_t M = lat.total_modes();

  std::vector<std::vector<double>> vel(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) vel[j] = to_physical(lat, u.coeffs[j]);
  const auto grad = physical_gradient(u);

  SpectralVectorField out(u.lattice, u.time);
  std::vector<double> adv(M);
  for (int i = 0; i < n; ++i) {
    std::fill(adv.begin(), adv.end(), 0.0);
    for (int j = 0; j < n; ++j) {
      const auto& uj = vel[j];
      const auto& dj_ui = grad[i][j];
      for (std::size_t x = 0; x < M; ++x) adv[x] += uj[x] * dj_ui[x];
    }
    out.coeffs[i] = to_spectral(lat, adv);
    if (apply_dealias) dealias_in_place(lat, out.coeffs[i]);
    // The advective term of a periodic divergence-free field has zero mean.
    out.coeffs[i][0] = 0.0;
  }
  out = leray_project(std::move(out));
  for (auto& c : out.coeffs)
    for (auto& z : c) z = -z;
  return out;
}

ComplexArray compute_pressure(const WavenumberLattice& lat,
                              const std::vector<std::vector<std::vector<double>>>& grad) {
  const int n = lat.dim();
  const std::size_t M = lat.total_modes();
  // grad[c][a] = d_a u_c, so (d_i u_j)(d_j u_i) = grad[j][i] * grad[i][j].
  std::vector<double> trace(M, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& a = grad[j][i];
      const auto& b = grad[i][j];
      for (std::size_t x = 0; x < M; ++x) trace[x] += a[x] * b[x];
    }
  ComplexArray p = to_spectral(lat, trace);
  dealias_in_place(lat, p);
  for (std::size_t idx = 0; idx < M; ++idx) {
    const double k2 = lat.kmod2(idx);
    p[idx] = k2 == 0.0 ? Complex(0.0) : p[idx] / k2;
  }
  return p;
}

ComplexArray compute_pressure(const SpectralVectorField& u) {
  return compute_pressure(*u.lattice, physical_gradient(u));
}

std::vector<double> dissipation_symbol(const WavenumberLattice& lat, double alpha, double nu) {
  std::vector<double> sym(lat.total_modes());
  for (std::size_t idx = 0; idx < sym.size(); ++idx) {
    const double k2 = lat.kmod2(idx);
    sym[idx] = k2 == 0.0 ? 0.0 : nu * std::pow(k2, alpha);
  }
  return sym;
}

Stepper::Stepper(const SolverConfig& cfg, LatticePtr lattice)
    : cfg_(cfg), lattice_(std::move(lattice)) {
  if (cfg_.inviscid) {
    symbol_.assign(lattice_->total_modes(), 0.0);
  } else {
    symbol_ = dissipation_symbol(*lattice_, cfg_.alpha, cfg_.nu);
  }
  if (cfg_.fault.flip_dissipation_sign)
    for (auto& s : symbol_) s = -s;
}

SpectralVectorField Stepper::rhs(const SpectralVectorField& u) const {
  if (!cfg_.nonlinear) return SpectralVectorField(u.lattice, u.time);
  return nonlinear_term(u, !cfg_.fault.skip_dealias);
}

SolverState Stepper::step(const SolverState& state, double dt) const {
  if (!(dt > 0.0)) throw InvalidArgument("time step must be positive");
  const auto& u = state.u;
  const int n = u.dim();
  const std::size_t M = u.size();

  std::vector<double> e_half(M), e_full(M);
  for (std::size_t idx = 0; idx < M; ++idx) {
    e_half[idx] = std::exp(-symbol_[idx] * 0.5 * dt);
    e_full[idx] = std::exp(-symbol_[idx] * dt);
  }

  // Stage combinations, per component and mode.
  auto combine = [&](auto&& f) {
    SpectralVectorField w(u.lattice, u.time);
    for (int i = 0; i < n; ++i)
      for (std::size_t idx = 0; idx < M; ++idx) w.coeffs[i][idx] = f(i, idx);
    return w;
  };

  const double h = dt;
  const auto k1 = rhs(u);
  auto a = combine([&](int i, std::size_t x) {
    return e_half[x] * (u.coeffs[i][x] + 0.5 * h * k1.coeffs[i][x]);
  });
  a.time = u.time + 0.5 * h;
  const auto k2 = rhs(a);
  auto b = combine([&](int i, std::size_t x) {
    return e_half[x] * u.coeffs[i][x] + 0.5 * h * k2.coeffs[i][x];
  });
  b.time = u.time + 0.5 * h;
  const auto k3 = rhs(b);
  auto c = combine([&](int i, std::size_t x) {
    return e_full[x] * u.coeffs[i][x] + h * e_half[x] * k3.coeffs[i][x];
  });
  c.time = u.time + h;
  const auto k4 = rhs(c);

  SolverState next;
  next.u = combine([&](int i, std::size_t x) {
    return e_full[x] * u.coeffs[i][x] +
           (h / 6.0) * (e_full[x] * k1.coeffs[i][x] +
                        2.0 * e_half[x] * (k2.coeffs[i][x] + k3.coeffs[i][x]) + k4.coeffs[i][x]);
  });
  next.t = state.t + dt;
  next.step_count = state.step_count + 1;

  if (!cfg_.fault.skip_dealias) next.u = dealias(std::move(next.u));
  next.u = leray_project(std::move(next.u));
  for (auto& comp : next.u.coeffs) comp[0] = 0.0;
  next.u.time = next.t;

  if (!next.u.all_finite()) throw Diverged(next.t, next.step_count);
  return next;
}

SolverState step(const SolverState& state, double dt, const SolverConfig& cfg) {
  return Stepper(cfg, state.u.lattice).step(state, dt);
}

double cfl_dt(const SpectralVectorField& u, const SolverConfig& cfg) {
  double umax = 0.0;
  for (const auto& c : u.coeffs) {
    const auto phys = to_physical(*u.lattice, c);
    for (double v : phys) umax = std::max(umax, std::abs(v));
  }
  if (umax == 0.0) return cfg.dt_max;
  return std::min(cfg.cfl_safety * u.lattice->grid_spacing() / umax, cfg.dt_max);
}

SolverState integrate(SolverState state, const SolverConfig& cfg, double dt, std::uint64_t steps) {
  const Stepper stepper(cfg, state.u.lattice);
  for (std::uint64_t s = 0; s < steps; ++s) state = stepper.step(state, dt);
  return state;
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::completed: return "completed";
    case RunStatus::diverged: return "diverged";
    case RunStatus::resolution_loss: return "resolution_loss";
  }
  return "unknown";
}

AdvanceResult advance(SolverState state, const SolverConfig& cfg, const DiagnosticsSink& sink) {
  cfg.validate();
  const Stepper stepper(cfg, state.u.lattice);

  auto emit = [&](const SolverState& s, double dt) {
    DiagnosticsRecord rec = make_record(s, cfg, dt);
    if (sink) sink(rec);
    return rec;
  };

  DiagnosticsRecord last = emit(state, 0.0);
  while (state.t < cfg.t_end) {
    const double remaining = cfg.t_end - state.t;
    double dt = cfl_dt(state.u, cfg);
    if (dt < kStepCollapseFraction * cfg.t_end) {
      // Velocity has grown so large that t_end is out of reach.
      DiagnosticsRecord rec = make_record(state, cfg, dt);
      rec.flags.diverged = true;
      if (sink) sink(rec);
      return {std::move(state), RunStatus::diverged};
    }
    // Avoid a sliver of a final step.
    if (dt >= remaining || remaining - dt < 1e-12 * cfg.t_end) dt = remaining;
    try {
      state = stepper.step(state, dt);
    } catch (const Diverged&) {
      DiagnosticsRecord rec = make_record(state, cfg, dt);
      rec.flags.diverged = true;
      if (sink) sink(rec);
      return {std::move(state), RunStatus::diverged};
    }
    if (dt == remaining) state.t = cfg.t_end;
    state.u.time = state.t;
    if (state.step_count % static_cast<std::uint64_t>(cfg.diag_stride) == 0 ||
        state.t >= cfg.t_end) {
      last = emit(state, dt);
    }
  }

  RunStatus status = RunStatus::completed;
  if (last.flags.diverged) {
    status = RunStatus::diverged;
  } else if (last.flags.resolution_loss) {
    status = RunStatus::resolution_loss;
  }
  return {std::move(state), status};
}

}  // namespace nshd
