#include "nshd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nshd/errors.hpp"
#include "nshd/operators.hpp"

namespace nshd {

namespace {

double volume(int n) { return std::pow(2.0 * std::numbers::pi, n); }

// x^e with an exact multiplication chain for small non-negative integer e.
double power(double x, double e) {
  if (e >= 0.0 && e <= 16.0 && e == std::floor(e)) {
    double r = 1.0;
    for (int i = 0; i < static_cast<int>(e); ++i) r *= x;
    return r;
  }
  return std::pow(x, e);
}

double binomial(int m, int l) {
  double b = 1.0;
  for (int i = 1; i <= l; ++i) b = b * (m - l + i) / i;
  return b;
}

double physical_max_abs(const WavenumberLattice& lat, std::span<const Complex> c) {
  double m = 0.0;
  for (double v : to_physical(lat, c)) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

double DiagnosticsRecord::moment(int component, double order) const {
  for (const auto& [key, values] : moments) {
    if (std::abs(key - order) <= 1e-12 * std::max(1.0, std::abs(order))) return values.at(component);
  }
  throw InvalidArgument("moment of order " + std::to_string(order) + " not recorded");
}

double energy(const SpectralVectorField& u) {
  double s = 0.0;
  for (const auto& c : u.coeffs)
    for (const auto& z : c) s += std::norm(z);
  return 0.5 * volume(u.dim()) * s;
}

double dissipation_rate(const SpectralVectorField& u, double alpha, double nu) {
  const auto& lat = *u.lattice;
  double s = 0.0;
  for (std::size_t idx = 0; idx < u.size(); ++idx) {
    double a2 = 0.0;
    for (const auto& c : u.coeffs) a2 += std::norm(c[idx]);
    if (a2 == 0.0) continue;
    s += power(lat.kmod2(idx), alpha) * a2;
  }
  return nu * volume(u.dim()) * s;
}

namespace {

// Moments for several orders in one pass. Each order is split into an
// integer part (repeated multiplication) and a fractional part, so at most
// one pow per distinct fractional part is evaluated per mode.
std::vector<double> moment_table(const WavenumberLattice& lat, std::span<const Complex> c,
                                 std::span<const double> orders) {
  std::vector<int> whole(orders.size());
  std::vector<double> frac(orders.size());
  std::vector<double> fracs;
  int top = 0;
  for (std::size_t o = 0; o < orders.size(); ++o) {
    whole[o] = static_cast<int>(std::floor(orders[o]));
    frac[o] = orders[o] - whole[o];
    top = std::max(top, whole[o]);
    if (frac[o] != 0.0 && std::find(fracs.begin(), fracs.end(), frac[o]) == fracs.end()) {
      fracs.push_back(frac[o]);
    }
  }
  std::vector<double> sums(orders.size(), 0.0);
  std::vector<double> ipow(static_cast<std::size_t>(top) + 1);
  std::vector<double> fpow(fracs.size());
  for (std::size_t idx = 0; idx < c.size(); ++idx) {
    const double a = std::abs(c[idx]);
    if (a == 0.0) continue;
    const double k = lat.kmod(idx);
    ipow[0] = 1.0;
    for (int p = 1; p <= top; ++p) ipow[p] = ipow[p - 1] * k;
    for (std::size_t f = 0; f < fracs.size(); ++f) fpow[f] = std::pow(k, fracs[f]);
    for (std::size_t o = 0; o < orders.size(); ++o) {
      double w = ipow[whole[o]];
      if (frac[o] != 0.0) {
        w *= fpow[std::find(fracs.begin(), fracs.end(), frac[o]) - fracs.begin()];
      }
      sums[o] += w * a;
    }
  }
  return sums;
}

}  // namespace

double moment_norm(const WavenumberLattice& lat, std::span<const Complex> c, double order) {
  if (order < 0.0) throw InvalidArgument("moment order must be non-negative");
  const double orders[1] = {order};
  return moment_table(lat, c, orders)[0];
}

double moment_norm(const SpectralVectorField& u, int component, double order) {
  if (component < 0 || component >= u.dim()) throw InvalidArgument("component out of range");
  return moment_norm(*u.lattice, u.coeffs[component], order);
}

double enstrophy(const SpectralVectorField& u) {
  const auto w = vorticity(u);
  double s = 0.0;
  for (const auto& c : w.coeffs)
    for (const auto& z : c) s += std::norm(z);
  return 0.5 * volume(u.dim()) * s;
}

namespace {

double production_from(const SpectralVectorField& u,
                       const std::vector<std::vector<std::vector<double>>>& grad) {
  if (u.dim() != 3) return 0.0;
  const auto& lat = *u.lattice;
  const auto w = vorticity(u);
  std::array<std::vector<double>, 3> wp;
  for (int i = 0; i < 3; ++i) wp[i] = to_physical(lat, w.coeffs[i]);
  // Grid sum is exact here: every factor has |k_j| < N/3, so the cubic
  // integrand has no frequency that aliases onto zero.
  double s = 0.0;
  for (std::size_t x = 0; x < lat.total_modes(); ++x) {
    double px = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) px += wp[i][x] * grad[j][i][x] * wp[j][x];
    s += px;
  }
  return s * volume(3) / static_cast<double>(lat.total_modes());
}

}  // namespace

double enstrophy_production(const SpectralVectorField& u) {
  if (u.dim() != 3) return 0.0;
  return production_from(u, physical_gradient(u));
}

double sobolev_norm(const SpectralVectorField& u, double beta) {
  const auto& lat = *u.lattice;
  double s = 0.0;
  for (std::size_t idx = 0; idx < u.size(); ++idx) {
    double a2 = 0.0;
    for (const auto& c : u.coeffs) a2 += std::norm(c[idx]);
    if (a2 == 0.0) continue;
    s += power(1.0 + lat.kmod2(idx), beta) * a2;
  }
  return std::sqrt(volume(u.dim()) * s);
}

double max_velocity(const SpectralVectorField& u) {
  const auto phys = to_physical(u);
  double m = 0.0;
  for (std::size_t x = 0; x < u.size(); ++x) {
    double s = 0.0;
    for (const auto& comp : phys.values) s += comp[x] * comp[x];
    m = std::max(m, s);
  }
  return std::sqrt(m);
}

double tail_fraction(const SpectralVectorField& u) {
  const auto& lat = *u.lattice;
  const double hi = lat.modes_per_axis() / 3.0;
  const double lo = hi - 1.0;
  double tail = 0.0;
  double total = 0.0;
  for (std::size_t idx = 0; idx < u.size(); ++idx) {
    double a2 = 0.0;
    for (const auto& c : u.coeffs) a2 += std::norm(c[idx]);
    total += a2;
    const double k = lat.kmod(idx);
    if (k >= lo && k < hi) tail += a2;
  }
  if (total == 0.0) return 0.0;
  if (!std::isfinite(total)) return total;
  return tail / total;
}

std::vector<double> record_moment_orders(const SolverConfig& cfg) {
  std::vector<double> orders{1.0};
  for (int m : cfg.moment_orders) {
    orders.push_back(m);
    orders.push_back(m + 1);
    orders.push_back(2.0 * cfg.alpha + m);
  }
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  return orders;
}

DiagnosticsRecord make_record(const SolverState& state, const SolverConfig& cfg, double dt) {
  const auto& u = state.u;
  const auto& lat = *u.lattice;
  const int n = u.dim();

  DiagnosticsRecord rec;
  rec.t = state.t;
  rec.step = state.step_count;
  rec.dt = dt;
  rec.energy = energy(u);
  rec.dissipation_rate = cfg.inviscid ? 0.0 : dissipation_rate(u, cfg.alpha, cfg.nu);
  rec.enstrophy = enstrophy(u);
  rec.max_velocity = max_velocity(u);

  const auto grad = physical_gradient(u);
  rec.enstrophy_production = production_from(u, grad);

  const auto orders = record_moment_orders(cfg);
  for (double order : orders) rec.moments[order].resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto sums = moment_table(lat, u.coeffs[i], orders);
    for (std::size_t o = 0; o < orders.size(); ++o) rec.moments[orders[o]][i] = sums[o];
  }

  const ComplexArray p = compute_pressure(lat, grad);
  for (int m : cfg.moment_orders) rec.pressure_moment[m] = moment_norm(lat, p, m + 1);

  for (double beta : cfg.sobolev_orders) rec.sobolev[beta] = sobolev_norm(u, beta);

  rec.tail_fraction = tail_fraction(u);
  rec.flags = blowup_indicator(rec);
  return rec;
}

DiagnosticFlags blowup_indicator(const DiagnosticsRecord& r) {
  bool finite = std::isfinite(r.t) && std::isfinite(r.dt) && std::isfinite(r.energy) &&
                std::isfinite(r.dissipation_rate) && std::isfinite(r.enstrophy) &&
                std::isfinite(r.enstrophy_production) && std::isfinite(r.max_velocity) &&
                std::isfinite(r.tail_fraction);
  for (const auto& [order, values] : r.moments)
    for (double v : values) finite = finite && std::isfinite(v);
  for (const auto& [m, v] : r.pressure_moment) finite = finite && std::isfinite(v);
  for (const auto& [b, v] : r.sobolev) finite = finite && std::isfinite(v);

  DiagnosticFlags flags;
  flags.diverged = !finite || r.flags.diverged;
  flags.resolution_loss = std::isfinite(r.tail_fraction) && r.tail_fraction > kResolutionLossThreshold;
  return flags;
}

namespace {

struct Derivative {
  double value;
  double allowance;
};

// d/dt of M at the middle of three samples (second-order, non-uniform).
// The allowance models the truncation error h1 h2 |f'''|/6 with
// f''' ~ f''^2/f', exact for exponential behaviour, inflated tenfold.
Derivative centered(double t0, double t1, double t2, double f0, double f1, double f2) {
  const double h1 = t1 - t0;
  const double h2 = t2 - t1;
  const double d = -h2 / (h1 * (h1 + h2)) * f0 + (h2 - h1) / (h1 * h2) * f1 +
                   h1 / (h2 * (h1 + h2)) * f2;
  const double d2 = 2.0 * ((f2 - f1) / h2 - (f1 - f0) / h1) / (h1 + h2);
  double allowance;
  if (d != 0.0) {
    allowance = 10.0 * h1 * h2 / 6.0 * d2 * d2 / std::abs(d);
  } else {
    allowance = 10.0 * std::max(h1, h2) * std::abs(d2);
  }
  allowance += 10.0 * std::abs(h2 - h1) * std::abs(d2);
  return {d, allowance};
}

Prop1Evaluation evaluate_rhs(const DiagnosticsRecord& r, int i, int m, double alpha, double nu) {
  const int n = static_cast<int>(r.moments.begin()->second.size());
  if (i < 0 || i >= n) throw InvalidArgument("component out of range");
  Prop1Evaluation e;
  e.t = r.t;
  for (int j = 0; j < n; ++j)
    for (int l = 0; l <= m; ++l) e.nonlinear += binomial(m, l) * r.moment(j, l) * r.moment(i, m - l + 1);
  e.dissipative = nu * r.moment(i, 2.0 * alpha + m);
  const auto it = r.pressure_moment.find(m);
  if (it == r.pressure_moment.end()) throw InvalidArgument("pressure moment not recorded");
  e.pressure = it->second;
  e.rhs = e.nonlinear - e.dissipative + e.pressure;
  return e;
}

void finish(Prop1Evaluation& e, const Derivative& d) {
  e.lhs = d.value;
  e.residual = e.rhs - e.lhs;
  e.tol = 1e-6 * (1.0 + std::abs(e.rhs)) + d.allowance;
  e.satisfied = e.residual >= -e.tol;
}

}  // namespace

Prop1Evaluation prop1_residual(std::span<const DiagnosticsRecord> window, int component, int m,
                               double alpha, double nu) {
  if (window.size() < 3) throw NotEnoughSamples("moment inequality needs at least three records");
  const std::size_t c = window.size() / 2;
  const auto& r0 = window[c - 1];
  const auto& r1 = window[c];
  const auto& r2 = window[c + 1];
  Prop1Evaluation e = evaluate_rhs(r1, component, m, alpha, nu);
  finish(e, centered(r0.t, r1.t, r2.t, r0.moment(component, m), r1.moment(component, m),
                     r2.moment(component, m)));
  return e;
}

std::vector<Prop1Evaluation> prop1_series(std::span<const DiagnosticsRecord> records, int component,
                                          int m, double alpha, double nu) {
  if (records.size() < 3) throw NotEnoughSamples("moment inequality needs at least three records");
  std::vector<Prop1Evaluation> out;
  out.reserve(records.size());
  const std::size_t last = records.size() - 1;
  for (std::size_t k = 0; k <= last; ++k) {
    if (k > 0 && k < last) {
      out.push_back(prop1_residual(records.subspan(k - 1, 3), component, m, alpha, nu));
      continue;
    }
    // One-sided first-order difference at the ends.
    const std::size_t a = k == 0 ? 0 : last - 1;
    const std::size_t b = a + 1;
    const auto& ra = records[a];
    const auto& rb = records[b];
    const double h = rb.t - ra.t;
    const double slope = (rb.moment(component, m) - ra.moment(component, m)) / h;
    // Curvature from the three samples nearest the end; the forward
    // difference is off by about h |f''|/2.
    const std::size_t s = k == 0 ? 0 : last - 2;
    auto f = [&](std::size_t j) { return records[j].moment(component, m); };
    const double t0 = records[s].t, t1 = records[s + 1].t, t2 = records[s + 2].t;
    const double d2 = 2.0 * ((f(s + 2) - f(s + 1)) / (t2 - t1) - (f(s + 1) - f(s)) / (t1 - t0)) / (t2 - t0);
    Prop1Evaluation e = evaluate_rhs(records[k], component, m, alpha, nu);
    finish(e, {slope, 10.0 * h * std::abs(d2)});
    e.one_sided = true;
    out.push_back(e);
  }
  return out;
}

std::vector<MaxNormBound> lemma2_bound_check(const SpectralVectorField& u, int beta_total) {
  if (beta_total < 0) throw InvalidArgument("derivative order must be non-negative");
  const auto& lat = *u.lattice;
  std::vector<MaxNormBound> out;
  for (int i = 0; i < u.dim(); ++i) {
    const double rhs = moment_norm(lat, u.coeffs[i], beta_total);
    if (beta_total == 0) {
      const double lhs = physical_max_abs(lat, u.coeffs[i]);
      out.push_back({i, -1, lhs, rhs, lhs <= rhs + 1e-10});
      continue;
    }
    for (int axis = 0; axis < u.dim(); ++axis) {
      ComplexArray d = u.coeffs[i];
      for (int r = 0; r < beta_total; ++r) d = spectral_derivative(lat, d, axis);
      const double lhs = physical_max_abs(lat, d);
      out.push_back({i, axis, lhs, rhs, lhs <= rhs + 1e-10});
    }
  }
  return out;
}

}  // namespace nshd
