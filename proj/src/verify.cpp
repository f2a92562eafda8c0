#include "nshd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "nshd/diagnostics.hpp"
#include "nshd/errors.hpp"
#include "nshd/initial_conditions.hpp"
#include "nshd/operators.hpp"
#include "nshd/scaling.hpp"

namespace nshd {

using nlohmann::json;

namespace {

using Property = std::function<PropertyResult(const FaultInjection&)>;

PropertyResult result(const std::string& name, double value, double tol, std::string detail = {}) {
  return PropertyResult{name, std::isfinite(value) && value <= tol, value, tol, std::move(detail)};
}

SpectralVectorField random_field(int n, int N, int k_min, int k_max, std::uint64_t seed, double amp = 1.0) {
  InitialConditionSpec spec;
  spec.kind = InitialConditionKind::random_band;
  spec.seed = seed;
  spec.k_min = k_min;
  spec.k_max = k_max;
  spec.amplitude = amp;
  return random_band_limited(build_lattice(n, N), spec);
}

/// Components drawn from unrelated fields, so the result is not solenoidal.
SpectralVectorField compressible_field(int n, int N) {
  SpectralVectorField u = random_field(n, N, 1, N / 4, 5);
  for (int i = 0; i < n; ++i) u.coeffs[i] = random_field(n, N, 1, N / 4, 100 + i).coeffs[(i + 1) % n];
  return u;
}

double quadrature_energy(const SpectralVectorField& u) {
  const PhysicalVectorField f = to_physical(u);
  const double cell = std::pow(u.lattice->grid_spacing(), u.dim());
  double s = 0.0;
  for (const auto& comp : f.values)
    for (double v : comp) s += v * v;
  return 0.5 * s * cell;
}

PropertyResult parseval(const FaultInjection&) {
  double worst = 0.0;
  for (auto [n, N] : {std::pair{2, 32}, std::pair{3, 16}}) {
    const auto u = random_field(n, N, 1, N / 3 - 1, 1);
    const double e = energy(u);
    worst = std::max(worst, std::abs(quadrature_energy(u) - e) / e);
  }
  return result("parseval", worst, 1e-12, "relative gap between grid quadrature and coefficient sum");
}

PropertyResult roundtrip(const FaultInjection&) {
  double worst = 0.0;
  for (auto [n, N] : {std::pair{2, 32}, std::pair{3, 16}}) {
    const auto u = random_field(n, N, 1, N / 3 - 1, 2);
    worst = std::max(worst, relative_l2_difference(to_spectral(to_physical(u)), u));
  }
  return result("roundtrip", worst, 1e-13, "relative l2 error of inverse then forward transform");
}

PropertyResult leray_idempotence(const FaultInjection&) {
  double worst = 0.0;
  for (auto [n, N] : {std::pair{2, 32}, std::pair{3, 16}}) {
    const auto p1 = leray_project(compressible_field(n, N));
    const auto p2 = leray_project(p1);
    const double scale = p1.max_amplitude() * N;
    worst = std::max({worst, relative_l2_difference(p2, p1), divergence_defect(p1) / scale});
  }
  return result("leray_idempotence", worst, 1e-14, "max of |PPu - Pu|/|Pu| and scaled divergence");
}

PropertyResult hermitian_symmetry(const FaultInjection& fault) {
  SolverConfig cfg;
  cfg.N = 32;
  cfg.nu = 0.05;
  cfg.fault = fault;
  SolverState s{random_field(2, 32, 1, 8, 3), 0.0, 0};
  double worst = 0.0;
  try {
    s = integrate(s, cfg, 5e-3, 20);
    worst = hermitian_defect(s.u) / s.u.max_amplitude();
  } catch (const Diverged&) {
    worst = INFINITY;
  }
  return result("hermitian_symmetry", worst, 1e-13, "max |c(-k) - conj c(k)| / max |c| after 20 steps");
}

PropertyResult exact_decay(const FaultInjection& fault) {
  double worst = 0.0;
  for (double alpha : {0.75, 1.0, 1.5}) {
    for (int n : {2, 3}) {
      SolverConfig cfg;
      cfg.n = n;
      cfg.N = 16;
      cfg.alpha = alpha;
      cfg.nu = 1.0;
      cfg.nonlinear = n == 2;  // the 3D field is not a steady Euler flow
      cfg.fault = fault;
      const Stepper stepper(cfg, build_lattice(n, cfg.N));
      const double rate = 2.0 * cfg.nu * std::pow(static_cast<double>(n), alpha);
      SolverState s{taylor_green(build_lattice(n, cfg.N), 1.0), 0.0, 0};
      const double e0 = energy(s.u);
      try {
        for (int i = 0; i < 50; ++i) {
          s = stepper.step(s, 0.01);
          const double expected = e0 * std::exp(-rate * s.t);
          worst = std::max(worst, std::abs(energy(s.u) - expected) / expected);
        }
      } catch (const Diverged&) {
        worst = INFINITY;
      }
    }
  }
  return result("exact_decay", worst, 1e-10,
                "Taylor-Green energy against E0 exp(-2 nu n^alpha t), relative");
}

PropertyResult energy_monotonicity(const FaultInjection& fault) {
  SolverConfig cfg;
  cfg.N = 32;
  cfg.alpha = 1.0;
  cfg.nu = 0.05;
  cfg.t_end = 0.5;
  cfg.diag_stride = 1;
  cfg.fault = fault;
  double prev = NAN, worst = 0.0, e0 = 0.0;
  advance(SolverState{random_field(2, 32, 1, 8, 4), 0.0, 0}, cfg, [&](const DiagnosticsRecord& r) {
    if (std::isnan(prev)) {
      e0 = r.energy;
    } else {
      worst = std::max(worst, (r.energy - prev) / e0);
    }
    if (!std::isfinite(r.energy)) worst = INFINITY;
    prev = r.energy;
  });
  return result("energy_monotonicity", worst, 1e-12, "largest energy increase between records over E0");
}

PropertyResult energy_balance(const FaultInjection& fault) {
  // Band close to the cutoff so that products reach past the grid; with
  // dealiasing the nonlinear term conserves energy exactly.
  SolverConfig cfg;
  cfg.N = 16;
  cfg.alpha = 1.0;
  cfg.nu = 0.01;
  cfg.fault = fault;
  const double dt = 1e-3;
  const int steps = 200;
  const Stepper stepper(cfg, build_lattice(2, cfg.N));
  SolverState s{random_field(2, cfg.N, 1, 5, 6, 3.0), 0.0, 0};
  const double e0 = energy(s.u);
  std::vector<double> d{dissipation_rate(s.u, cfg.alpha, cfg.nu)};
  try {
    for (int i = 0; i < steps; ++i) {
      s = stepper.step(s, dt);
      d.push_back(dissipation_rate(s.u, cfg.alpha, cfg.nu));
    }
  } catch (const Diverged&) {
    return result("energy_balance", INFINITY, 1e-8, "diverged");
  }
  double integral = d.front() + d.back();
  for (int i = 1; i < steps; ++i) integral += (i % 2 ? 4.0 : 2.0) * d[i];
  integral *= dt / 3.0;
  const double residual = std::abs(energy(s.u) - e0 + integral) / e0;
  return result("energy_balance", residual, 1e-8, "|E(T) - E(0) + int D dt| / E(0)");
}

PropertyResult moment_ratio_invariance(const FaultInjection&) {
  double worst = 0.0;
  for (int n : {2, 3}) {
    for (auto [ell, m] : {std::pair{1.0, 3.0}, std::pair{0.0, 2.5}, std::pair{2.0, 4.0}}) {
      const double ref = lemma1_ratio(n, ell, m, 1.0);
      for (double sigma : {0.25, 0.5, 2.0, 8.0}) {
        worst = std::max(worst, std::abs(lemma1_ratio(n, ell, m, sigma) - ref) / ref);
      }
    }
  }
  return result("moment_ratio_invariance", worst, 1e-10, "relative spread of the moment ratio across Gaussian widths");
}

PropertyResult gaussian_oracle(const FaultInjection&) {
  double worst = 0.0;
  for (int n : {2, 3}) {
    for (double ell : {0.0, 1.0, 2.0, 2.5, 5.0}) {
      for (double sigma : {0.5, 1.0, 2.0}) {
        const double exact = gaussian_moment(n, ell, sigma);
        worst = std::max(worst, std::abs(gaussian_moment_quadrature(n, ell, sigma) - exact) / exact);
      }
    }
  }
  return result("gaussian_oracle", worst, 1e-10, "closed-form Gaussian moments against quadrature");
}

PropertyResult max_norm_bound(const FaultInjection&) {
  double worst = 0.0;
  for (auto [n, N] : {std::pair{2, 32}, std::pair{3, 16}}) {
    const auto u = random_field(n, N, 1, N / 3 - 1, 8);
    for (int beta = 0; beta <= 3; ++beta) {
      for (const auto& c : lemma2_bound_check(u, beta)) worst = std::max(worst, c.lhs / c.rhs);
    }
  }
  return result("max_norm_bound", worst, 1.0 + 1e-12, "max ||d^beta u||_inf / M_beta");
}

PropertyResult moment_inequality_tg(const FaultInjection& fault) {
  SolverConfig cfg;
  cfg.N = 16;
  cfg.alpha = 1.0;
  cfg.nu = 1.0;
  cfg.t_end = 0.2;
  cfg.dt_max = 1e-3;
  cfg.diag_stride = 1;
  cfg.moment_orders = {0, 1, 2};
  cfg.fault = fault;
  std::vector<DiagnosticsRecord> records;
  advance(SolverState{taylor_green(build_lattice(2, cfg.N), 1.0), 0.0, 0}, cfg,
          [&](const DiagnosticsRecord& r) { records.push_back(r); });
  double worst = -INFINITY;
  for (int m : cfg.moment_orders) {
    for (int i = 0; i < 2; ++i) {
      for (const auto& ev : prop1_series(records, i, m, cfg.alpha, cfg.nu)) {
        worst = std::max(worst, (ev.lhs - ev.rhs) - ev.tol);
      }
    }
  }
  return result("moment_inequality_tg", worst, 0.0, "max (dM/dt - rhs - tol) along a Taylor-Green run");
}

PropertyResult scaling_identities(const FaultInjection&) {
  double worst = 0.0;
  for (int n = 2; n <= 64; ++n) {
    if (solvability_margin(n, lions_exponent(n)).margin != Rational(0)) worst = INFINITY;
  }
  for (int n : {2, 3}) {
    const auto u = random_field(n, n == 2 ? 64 : 32, 1, n == 2 ? 5 : 3, 9);
    for (double alpha : {0.75, 1.0, 1.25}) {
      for (int q : {2, 3}) {
        if (q * (n == 2 ? 5 : 3) * 3 >= (n == 2 ? 64 : 32)) continue;
        const double expected = std::pow(static_cast<double>(q), 4.0 * alpha - 2.0 - n);
        worst = std::max(worst, std::abs(scaled_energy_ratio(u, q, alpha) - expected) / expected);
      }
      const ScaleTransform st = make_scale_transform(1.7, alpha, n);
      worst = std::max({worst, std::abs(st.tau - std::pow(st.mu, 2.0 * alpha)) / st.tau,
                        std::abs(std::pow(st.mu, 2.0 * alpha - 1.0) - st.lambda) / st.lambda});
    }
  }
  return result("scaling_identities", worst, 1e-12,
                "critical margin at the Lions exponent, energy ratio q^{4 alpha - 2 - n}, mu/tau relations");
}

const std::vector<std::pair<std::string, Property>>& registry() {
  static const std::vector<std::pair<std::string, Property>> props = {
      {"parseval", parseval},
      {"roundtrip", roundtrip},
      {"leray_idempotence", leray_idempotence},
      {"hermitian_symmetry", hermitian_symmetry},
      {"exact_decay", exact_decay},
      {"energy_monotonicity", energy_monotonicity},
      {"energy_balance", energy_balance},
      {"moment_ratio_invariance", moment_ratio_invariance},
      {"max_norm_bound", max_norm_bound},
      {"moment_inequality_tg", moment_inequality_tg},
      {"gaussian_oracle", gaussian_oracle},
      {"scaling_identities", scaling_identities},
  };
  return props;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
}

std::vector<std::string> property_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

VerifyReport verify(const VerifyOptions& options) {
  VerifyReport report;
  for (const auto& [name, fn] : registry()) {
    if (!options.filter.empty() && name.find(options.filter) == std::string::npos) continue;
    try {
      report.results.push_back(fn(options.fault));
    } catch (const Error& e) {
      report.results.push_back(PropertyResult{name, false, INFINITY, 0.0, e.what()});
    }
  }
  if (report.results.empty()) throw InvalidArgument("filter: no property matches \"" + options.filter + "\"");
  return report;
}

json to_json(const VerifyReport& report) {
  json props = json::array();
  for (const auto& r : report.results) {
    props.push_back({{"name", r.name},
                     {"passed", r.passed},
                     {"value", std::isfinite(r.value) ? json(r.value) : json(nullptr)},
                     {"tolerance", r.tolerance},
                     {"detail", r.detail}});
  }
  return {{"passed", report.passed()}, {"properties", props}};
}

}  // namespace nshd
