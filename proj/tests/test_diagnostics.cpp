#include <doctest.h>

#include <cmath>
#include <limits>

#include "nshd/diagnostics.hpp"
#include "nshd/errors.hpp"
#include "nshd/initial_conditions.hpp"
#include "nshd/operators.hpp"
#include "oracles.hpp"

using namespace nshd;
using oracle::pi;

namespace {

SpectralVectorField random_field(int n, int N, std::uint64_t seed, int k_max, double amp = 1.0) {
  InitialConditionSpec spec;
  spec.kind = InitialConditionKind::random_band;
  spec.seed = seed;
  spec.k_min = 1;
  spec.k_max = k_max;
  spec.amplitude = amp;
  return random_band_limited(build_lattice(n, N), spec);
}

SpectralVectorField scaled(SpectralVectorField u, double c) {
  for (auto& comp : u.coeffs)
    for (auto& z : comp) z *= c;
  return u;
}

/// Exact Taylor-Green record at time t (alpha = nu = 1).
DiagnosticsRecord tg_record(double t, const SolverConfig& cfg) {
  auto u = scaled(taylor_green(build_lattice(2, cfg.N), 1.0), std::exp(-2.0 * t));
  u.time = t;
  return make_record(SolverState{u, t, 0}, cfg, 0.0);
}

}  // namespace

TEST_CASE("energy") {
  const auto lat = build_lattice(2, 32);
  const auto tg = taylor_green(lat, 1.0);
  CHECK(energy(tg) == doctest::Approx(pi * pi).epsilon(1e-14));
  CHECK(energy(SpectralVectorField(lat)) == 0.0);
  const auto r = random_field(3, 16, 4, 4);
  CHECK(energy(scaled(r, 3.0)) == doctest::Approx(9.0 * energy(r)).epsilon(1e-14));
  // grid quadrature of |u|^2 / 2 as an independent check
  const auto f = to_physical(tg);
  std::vector<double> e(f.values[0].size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = 0.5 * (f.values[0][i] * f.values[0][i] + f.values[1][i] * f.values[1][i]);
  CHECK(oracle::quadrature(*lat, e) == doctest::Approx(pi * pi).epsilon(1e-13));
}

TEST_CASE("dissipation rate") {
  const auto lat = build_lattice(2, 32);
  const auto tg = taylor_green(lat, 1.0);
  CHECK(dissipation_rate(tg, 1.0, 1.0) == doctest::Approx(4 * pi * pi).epsilon(1e-14));
  const auto r = random_field(2, 32, 5, 6);
  CHECK(dissipation_rate(r, 0.0, 0.3) == doctest::Approx(2 * 0.3 * energy(r)).epsilon(1e-14));
  CHECK(dissipation_rate(SpectralVectorField(lat), 1.5, 1.0) == 0.0);
}

TEST_CASE("moments") {
  const auto lat = build_lattice(2, 32);
  const auto tg = taylor_green(lat, 1.0);
  CHECK(moment_norm(tg, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(moment_norm(tg, 0, 2) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(moment_norm(tg, 1, 1) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(moment_norm(SpectralVectorField(lat), 0, 3) == 0.0);
  CHECK_THROWS_AS(moment_norm(tg, 0, -1.0), InvalidArgument);
  CHECK_THROWS_AS(moment_norm(tg, 2, 1.0), InvalidArgument);

  const auto r = random_field(3, 16, 6, 5);
  for (double m : {0.0, 1.0, 2.5, 3.0}) {
    CHECK(moment_norm(scaled(r, 2.5), 1, m) == doctest::Approx(2.5 * moment_norm(r, 1, m)).epsilon(1e-14));
    // direct mode sum
    double s = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) s += std::pow(r.lattice->kmod(i), m) * std::abs(r.coeffs[1][i]);
    CHECK(moment_norm(r, 1, m) == doctest::Approx(s).epsilon(1e-13));
  }
}

TEST_CASE("enstrophy and production") {
  const auto lat = build_lattice(2, 32);
  CHECK(enstrophy(taylor_green(lat, 1.0)) == doctest::Approx(2 * pi * pi).epsilon(1e-14));
  CHECK(enstrophy_production(random_field(2, 32, 7, 8)) == 0.0);

  SUBCASE("3D production against the enstrophy rate") {
    SolverConfig cfg;
    cfg.n = 3;
    cfg.N = 16;
    cfg.inviscid = true;
    const double h = 1e-3;
    SolverState s{random_field(3, 16, 3, 2, 10.0), 0.0, 0};
    s = integrate(s, cfg, h, 20);
    const auto prev = enstrophy(s.u);
    const auto mid = integrate(s, cfg, h, 1);
    const auto next = integrate(mid, cfg, h, 1);
    const double rate = oracle::central_difference(prev, enstrophy(next.u), h);
    const double prod = enstrophy_production(mid.u);
    CHECK(std::abs(rate - prod) <= 1e-4 * std::abs(prod));
  }
}

TEST_CASE("Sobolev norms") {
  const auto lat = build_lattice(2, 32);
  CHECK(sobolev_norm(SpectralVectorField(lat), 1.5) == 0.0);
  const auto r = random_field(2, 32, 8, 7);
  CHECK(sobolev_norm(r, 0.0) == doctest::Approx(std::sqrt(2 * energy(r))).epsilon(1e-14));
  CHECK(sobolev_norm(taylor_green(lat, 1.0), 1.0) ==
        doctest::Approx(std::sqrt(3.0) * std::sqrt(2 * pi * pi)).epsilon(1e-14));
}

TEST_CASE("max velocity and tail fraction") {
  const auto lat = build_lattice(2, 32);
  CHECK(max_velocity(taylor_green(lat, 2.0)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(tail_fraction(taylor_green(lat, 1.0)) == 0.0);
  SpectralVectorField u(lat);
  u.coeffs[1][lat->index_of({10, 0, 0})] = 1.0;
  u.coeffs[1][lat->index_of({-10, 0, 0})] = 1.0;
  u.coeffs[1][lat->index_of({1, 0, 0})] = 1.0;
  u.coeffs[1][lat->index_of({-1, 0, 0})] = 1.0;
  CHECK(tail_fraction(u) == doctest::Approx(0.5));
}

TEST_CASE("blow-up indicator") {
  SolverConfig cfg;
  cfg.N = 32;
  const auto lat = build_lattice(2, 32);
  auto rec = make_record(SolverState{random_field(2, 32, 9, 4), 0.0, 0}, cfg, 0.0);
  CHECK_FALSE(rec.flags.diverged);
  CHECK_FALSE(rec.flags.resolution_loss);

  SpectralVectorField u(lat);
  u.coeffs[1][lat->index_of({10, 0, 0})] = 1.0;
  u.coeffs[1][lat->index_of({-10, 0, 0})] = 1.0;
  rec = make_record(SolverState{u, 0.0, 0}, cfg, 0.0);
  CHECK(rec.flags.resolution_loss);
  CHECK_FALSE(rec.flags.diverged);

  u.coeffs[0][lat->index_of({2, 1, 0})] = std::numeric_limits<double>::quiet_NaN();
  rec = make_record(SolverState{u, 0.0, 0}, cfg, 0.0);
  CHECK(rec.flags.diverged);
  rec.energy = INFINITY;
  CHECK(blowup_indicator(rec).diverged);
}

TEST_CASE("records carry the orders the moment inequality needs") {
  SolverConfig cfg;
  cfg.alpha = 1.25;
  cfg.moment_orders = {0, 2};
  const auto orders = record_moment_orders(cfg);
  CHECK(orders == std::vector<double>{0.0, 1.0, 2.0, 2.5, 3.0, 4.5});
  const auto rec = make_record(SolverState{taylor_green(build_lattice(2, 16), 1.0), 0.0, 0}, cfg, 0.0);
  CHECK(rec.moment(0, 2.5) == doctest::Approx(4 * 0.25 * std::pow(2.0, 1.25)).epsilon(1e-14));
  CHECK(rec.pressure_moment.count(0) == 1);
  CHECK(rec.pressure_moment.count(2) == 1);
  CHECK_THROWS_AS(rec.moment(0, 7.0), InvalidArgument);
}

TEST_CASE("moment inequality monitor") {
  SolverConfig cfg;
  cfg.N = 16;
  cfg.moment_orders = {0, 1, 2};

  SUBCASE("zero field") {
    const auto lat = build_lattice(2, 16);
    std::vector<DiagnosticsRecord> w;
    for (double t : {0.0, 0.1, 0.2}) w.push_back(make_record(SolverState{SpectralVectorField(lat, t), t, 0}, cfg, 0.1));
    const auto ev = prop1_residual(w, 0, 1, 1.0, 1.0);
    CHECK(ev.lhs == 0.0);
    CHECK(ev.rhs == 0.0);
    CHECK(ev.residual == 0.0);
    CHECK(ev.satisfied);
  }

  SUBCASE("hand-computed Taylor-Green instance at t = 0") {
    const double h = 1e-4;
    const std::vector<DiagnosticsRecord> w{tg_record(-h, cfg), tg_record(0.0, cfg), tg_record(h, cfg)};
    const auto ev = prop1_residual(w, 0, 0, 1.0, 1.0);
    CHECK(ev.nonlinear == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-14));
    CHECK(ev.dissipative == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(ev.pressure == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(ev.rhs - (2 * std::sqrt(2.0) - 1.0)) <= 1e-6);
    CHECK(std::abs(ev.lhs - (-2.0)) <= 1e-6);
    CHECK(std::abs(ev.residual - (2 * std::sqrt(2.0) + 1.0)) <= 1e-6);
    CHECK(ev.satisfied);
    CHECK_FALSE(ev.one_sided);
  }

  SUBCASE("random field short run") {
    cfg.N = 32;
    cfg.nu = 0.1;
    cfg.t_end = 0.1;
    cfg.dt_max = 2e-3;
    cfg.diag_stride = 1;
    std::vector<DiagnosticsRecord> recs;
    advance(SolverState{random_field(2, 32, 10, 6, 2.0), 0.0, 0}, cfg,
            [&](const DiagnosticsRecord& r) { recs.push_back(r); });
    REQUIRE(recs.size() >= 3);
    for (int m : {0, 1, 2}) {
      for (int i : {0, 1}) {
        const auto series = prop1_series(recs, i, m, cfg.alpha, cfg.nu);
        CHECK(series.size() == recs.size());
        CHECK(series.front().one_sided);
        CHECK(series.back().one_sided);
        for (const auto& ev : series) CHECK(ev.residual >= -ev.tol);
      }
    }
  }

  SUBCASE("too few records") {
    const std::vector<DiagnosticsRecord> w{tg_record(0.0, cfg), tg_record(0.1, cfg)};
    CHECK_THROWS_AS(prop1_residual(w, 0, 0, 1.0, 1.0), NotEnoughSamples);
  }
}

TEST_CASE("energy rate and monotonicity on a viscous run") {
  SolverConfig cfg;
  cfg.N = 32;
  cfg.nu = 0.5;
  cfg.alpha = 1.2;
  cfg.t_end = 0.01;
  cfg.dt_max = 1e-4;
  cfg.diag_stride = 1;
  std::vector<DiagnosticsRecord> recs;
  advance(SolverState{random_field(2, 32, 11, 3), 0.0, 0}, cfg,
          [&](const DiagnosticsRecord& r) { recs.push_back(r); });
  for (std::size_t j = 1; j + 1 < recs.size(); ++j) {
    const double h = recs[j + 1].t - recs[j].t;
    REQUIRE(h == doctest::Approx(recs[j].t - recs[j - 1].t).epsilon(1e-9));
    const double rate = oracle::central_difference(recs[j - 1].energy, recs[j + 1].energy, h);
    CHECK(std::abs(rate + recs[j].dissipation_rate) <= 1e-6 * recs[j].dissipation_rate);
  }
  for (std::size_t j = 1; j < recs.size(); ++j) CHECK(recs[j].energy <= recs[j - 1].energy + 1e-10);
}

TEST_CASE("max-norm bound by moments") {
  const auto lat = build_lattice(2, 32);
  for (const auto& c : lemma2_bound_check(SpectralVectorField(lat), 2)) {
    CHECK(c.lhs == 0.0);
    CHECK(c.rhs == 0.0);
    CHECK(c.holds);
  }
  const auto tg = taylor_green(lat, 1.0);
  const auto b0 = lemma2_bound_check(tg, 0);
  REQUIRE(b0.size() == 2);
  CHECK(b0[0].axis == -1);
  CHECK(b0[0].lhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b0[0].rhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b0[0].holds);
  const auto b1 = lemma2_bound_check(tg, 1);
  REQUIRE(b1.size() == 4);
  CHECK(b1[0].component == 0);
  CHECK(b1[0].axis == 0);
  CHECK(b1[0].lhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b1[0].rhs == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  for (const auto& c : b1) CHECK(c.holds);

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (int beta : {0, 1, 2, 3})
      for (const auto& c : lemma2_bound_check(random_field(3, 16, seed, 5), beta)) CHECK(c.lhs <= c.rhs + 1e-10);
  }
}
