#include <doctest.h>

#include <cmath>
#include <sstream>

#include "nshd/checkpoint.hpp"
#include "nshd/errors.hpp"
#include "nshd/field.hpp"
#include "nshd/initial_conditions.hpp"
#include "nshd/lattice.hpp"
#include "nshd/operators.hpp"
#include "oracles.hpp"

using namespace nshd;
using oracle::pi;

namespace {

SpectralVectorField from_functions(LatticePtr lat, const std::vector<std::function<double(double, double, double)>>& f) {
  PhysicalVectorField p(lat);
  for (std::size_t i = 0; i < f.size(); ++i) p.values[i] = oracle::sample(*lat, f[i]);
  return to_spectral(p);
}

SpectralVectorField random_field(int n, int N, std::uint64_t seed, int k_max = 3) {
  InitialConditionSpec spec;
  spec.kind = InitialConditionKind::random_band;
  spec.seed = seed;
  spec.k_min = 1;
  spec.k_max = k_max;
  return random_band_limited(build_lattice(n, N), spec);
}

Complex at(const SpectralVectorField& u, int comp, ModeVector k) {
  return u.coeffs[comp][u.lattice->index_of(k)];
}

}  // namespace

TEST_CASE("lattice geometry for small grids") {
  const auto lat = build_lattice(2, 8);
  CHECK(lat->total_modes() == 64);
  CHECK(lat->kmod(lat->index_of({1, 1, 0})) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK_FALSE(lat->dealias_mask(lat->index_of({3, 0, 0})));
  CHECK(lat->dealias_mask(lat->index_of({2, -2, 0})));

  const auto lat3 = build_lattice(3, 16);
  CHECK(lat3->total_modes() == 4096);
  CHECK(lat3->dealias_mask(lat3->index_of({5, 0, 0})));
  CHECK_FALSE(lat3->dealias_mask(lat3->index_of({0, 0, -6})));
  CHECK(lat3->max_retained_component() == 5);
}

TEST_CASE("lattice rejects unsupported shapes") {
  CHECK_THROWS_AS(build_lattice(2, 7), InvalidArgument);
  CHECK_THROWS_AS(build_lattice(4, 8), InvalidArgument);
  CHECK_THROWS_AS(build_lattice(1, 8), InvalidArgument);
  CHECK_THROWS_AS(build_lattice(2, 6), InvalidArgument);
  CHECK_THROWS_AS(build_lattice(2, 1024), InvalidArgument);
}

TEST_CASE("lattice symmetry invariants") {
  for (auto [n, N] : {std::pair{2, 8}, std::pair{2, 10}, std::pair{3, 8}}) {
    const auto lat = build_lattice(n, N);
    int zeros = 0;
    for (std::size_t i = 0; i < lat->total_modes(); ++i) {
      const auto k = lat->k_of(i);
      CHECK(lat->index_of(k) == i);
      if (lat->kmod(i) == 0.0) ++zeros;
      const std::size_t m = lat->mirror_index(i);
      CHECK(lat->mirror_index(m) == i);
      CHECK(lat->dealias_mask(i) == lat->dealias_mask(m));
      bool nyquist = false;
      for (int a = 0; a < n; ++a) nyquist = nyquist || k[a] == -N / 2;
      if (nyquist) CHECK_FALSE(lat->dealias_mask(i));
    }
    CHECK(zeros == 1);
    CHECK(lat->kmod(lat->index_of({0, 0, 0})) == 0.0);
  }
}

TEST_CASE("forward transform matches a direct DFT") {
  const auto lat = build_lattice(2, 8);
  const auto f = oracle::sample(*lat, [](double x, double y, double) {
    return std::sin(x) * std::cos(2 * y) + 0.3 * std::cos(3 * x - y) + std::exp(std::sin(x + y));
  });
  const ComplexArray c = to_spectral(*lat, f);
  double worst = 0.0;
  for (std::size_t i = 0; i < lat->total_modes(); ++i) {
    worst = std::max(worst, std::abs(c[i] - oracle::naive_coefficient(*lat, f, lat->k_of(i))));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("Taylor-Green transform has four modes of magnitude 1/4") {
  const auto lat = build_lattice(2, 16);
  const auto u = from_functions(lat, {[](double x, double y, double) { return std::sin(x) * std::cos(y); },
                                      [](double x, double y, double) { return -std::cos(x) * std::sin(y); }});
  int nonzero = 0;
  for (std::size_t i = 0; i < lat->total_modes(); ++i) {
    const double a = std::abs(u.coeffs[0][i]);
    if (a > 1e-14) {
      ++nonzero;
      const auto k = lat->k_of(i);
      CHECK(std::abs(k[0]) == 1);
      CHECK(std::abs(k[1]) == 1);
      CHECK(a == doctest::Approx(0.25).epsilon(1e-14));
    }
  }
  CHECK(nonzero == 4);
  // sin x cos y = (e^{ix} - e^{-ix})(e^{iy} + e^{-iy}) / (4i)
  CHECK(std::abs(at(u, 0, {1, 1, 0}) - Complex(0, -0.25)) < 1e-15);
  CHECK(std::abs(at(u, 0, {-1, 1, 0}) - Complex(0, 0.25)) < 1e-15);
}

TEST_CASE("transform of zero is zero and round trips are exact") {
  const auto lat = build_lattice(3, 8);
  const SpectralVectorField z(lat);
  const auto p = to_physical(z);
  for (const auto& c : p.values)
    for (double v : c) CHECK(v == 0.0);
  CHECK(to_spectral(p).max_amplitude() == 0.0);

  for (auto [n, N] : {std::pair{2, 32}, std::pair{3, 16}}) {
    const auto u = random_field(n, N, 17);
    CHECK(relative_l2_difference(to_spectral(to_physical(u)), u) < 1e-12);
    const auto f = to_physical(u);
    const auto g = to_physical(to_spectral(f));
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < f.values[i].size(); ++j) {
        worst = std::max(worst, std::abs(f.values[i][j] - g.values[i][j]));
        scale = std::max(scale, std::abs(f.values[i][j]));
      }
    }
    CHECK(worst <= 1e-12 * scale);
  }
}

TEST_CASE("Parseval against grid quadrature") {
  for (auto [n, N] : {std::pair{2, 32}, std::pair{3, 16}}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto u = random_field(n, N, seed, N / 3);
      const auto f = to_physical(u);
      double quad = 0.0, sum = 0.0;
      for (int i = 0; i < n; ++i) {
        std::vector<double> sq(f.values[i].size());
        for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = f.values[i][j] * f.values[i][j];
        quad += oracle::quadrature(*u.lattice, sq);
        for (const auto& z : u.coeffs[i]) sum += std::norm(z);
      }
      CHECK(std::abs(quad - std::pow(2 * pi, n) * sum) <= 1e-10 * quad);
    }
  }
}

TEST_CASE("Leray projection") {
  SUBCASE("gradient fields project to zero") {
    const auto lat = build_lattice(2, 16);
    // grad of sin(x + 2y) + cos(3y)
    const auto g = from_functions(lat, {[](double x, double y, double) { return std::cos(x + 2 * y); },
                                        [](double x, double y, double) {
                                          return 2 * std::cos(x + 2 * y) - 3 * std::sin(3 * y);
                                        }});
    CHECK(leray_project(g).max_amplitude() < 1e-15);
  }
  SUBCASE("divergence-free fields are fixed") {
    const auto u = random_field(3, 16, 4);
    const auto p = leray_project(u);
    for (int i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < u.size(); ++j) CHECK(std::abs(p.coeffs[i][j] - u.coeffs[i][j]) <= 1e-15);
  }
  SUBCASE("mode (1,0) keeps only the transverse component") {
    const auto lat = build_lattice(2, 8);
    SpectralVectorField u(lat);
    const Complex a(0.3, -0.7), b(-1.1, 0.4);
    u.coeffs[0][lat->index_of({1, 0, 0})] = a;
    u.coeffs[1][lat->index_of({1, 0, 0})] = b;
    const auto p = leray_project(u);
    CHECK(at(p, 0, {1, 0, 0}) == Complex(0.0));
    CHECK(at(p, 1, {1, 0, 0}) == b);
  }
  SUBCASE("idempotent and solenoidal on arbitrary input") {
    const auto lat = build_lattice(3, 16);
    const auto u = from_functions(lat, {[](double x, double y, double z) { return std::sin(x + y) * std::cos(z); },
                                        [](double x, double, double z) { return std::cos(2 * x) + std::sin(z); },
                                        [](double x, double y, double z) { return std::sin(x - y + 2 * z); }});
    const auto p = leray_project(u);
    const auto pp = leray_project(p);
    for (int i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < u.size(); ++j) CHECK(std::abs(pp.coeffs[i][j] - p.coeffs[i][j]) <= 1e-15);
    CHECK(divergence_defect(p) <= 1e-12 * p.max_amplitude());
    CHECK(hermitian_defect(p) <= 1e-12);
  }
}

TEST_CASE("spectral derivatives") {
  const auto lat = build_lattice(2, 16);
  const auto u = from_functions(lat, {[](double x, double, double) { return std::sin(x); },
                                      [](double, double, double) { return 2.5; }});
  const auto dx = spectral_derivative(u, 0, 0);
  CHECK(std::abs(dx[lat->index_of({1, 0, 0})] - Complex(0.5)) < 1e-15);
  CHECK(std::abs(dx[lat->index_of({-1, 0, 0})] - Complex(0.5)) < 1e-15);
  const auto cx = to_physical(*lat, dx);
  for (std::size_t i = 0; i < cx.size(); ++i) CHECK(cx[i] == doctest::Approx(std::cos(oracle::grid_point(*lat, i)[0])).epsilon(1e-13));

  for (const auto& z : spectral_derivative(u, 0, 1)) CHECK(std::abs(z) < 1e-16);
  for (int axis : {0, 1})
    for (const auto& z : spectral_derivative(u, 1, axis)) CHECK(std::abs(z) == 0.0);

  SUBCASE("commutes with projection on solenoidal fields") {
    const auto v = random_field(2, 32, 8);
    const auto pv = leray_project(v);
    for (int axis : {0, 1}) {
      SpectralVectorField dv(v.lattice);
      for (int i = 0; i < 2; ++i) dv.coeffs[i] = spectral_derivative(v, i, axis);
      const auto pdv = leray_project(dv);
      for (int i = 0; i < 2; ++i) {
        const auto dpv = spectral_derivative(pv, i, axis);
        for (std::size_t j = 0; j < v.size(); ++j) CHECK(std::abs(pdv.coeffs[i][j] - dpv[j]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("dealiasing") {
  const auto lat = build_lattice(2, 8);
  SpectralVectorField tg = taylor_green(lat, 1.0);
  const auto d = dealias(tg);
  CHECK(relative_l2_difference(d, tg) == 0.0);

  SpectralVectorField nyq(lat);
  nyq.coeffs[0][lat->index_of({-4, 0, 0})] = 1.0;
  nyq.coeffs[1][lat->index_of({-4, 2, 0})] = Complex(0.0, 1.0);
  CHECK(dealias(nyq).max_amplitude() == 0.0);

  const auto r = random_field(2, 32, 9, 10);
  CHECK(relative_l2_difference(dealias(r), r) == 0.0);
}

TEST_CASE("vorticity") {
  const auto lat = build_lattice(2, 16);
  const auto w = vorticity(taylor_green(lat, 1.0));
  REQUIRE(w.coeffs.size() == 1);
  int nonzero = 0;
  for (std::size_t i = 0; i < lat->total_modes(); ++i) {
    if (std::abs(w.coeffs[0][i]) > 1e-14) {
      ++nonzero;
      CHECK(std::abs(w.coeffs[0][i]) == doctest::Approx(0.5).epsilon(1e-14));
    }
  }
  CHECK(nonzero == 4);
  const auto wp = to_physical(*lat, w.coeffs[0]);
  for (std::size_t i = 0; i < wp.size(); ++i) {
    const auto x = oracle::grid_point(*lat, i);
    CHECK(std::abs(wp[i] - 2 * std::sin(x[0]) * std::sin(x[1])) < 1e-13);
  }

  const auto lat3 = build_lattice(3, 8);
  const auto c = from_functions(lat3, {[](double, double, double) { return 1.0; },
                                       [](double, double, double) { return -2.0; },
                                       [](double, double, double) { return 0.5; }});
  CHECK(vorticity(c).max_amplitude() == 0.0);
  // grad of sin x cos(y + z)
  const auto g = from_functions(lat3, {[](double x, double y, double z) { return std::cos(x) * std::cos(y + z); },
                                       [](double x, double y, double z) { return -std::sin(x) * std::sin(y + z); },
                                       [](double x, double y, double z) { return -std::sin(x) * std::sin(y + z); }});
  CHECK(vorticity(g).max_amplitude() < 1e-15);
}

TEST_CASE("operators preserve Hermitian symmetry") {
  const auto u = random_field(3, 16, 12, 5);
  CHECK(hermitian_defect(u) <= 1e-12);
  CHECK(hermitian_defect(leray_project(u)) <= 1e-12);
  CHECK(hermitian_defect(dealias(u)) <= 1e-12);
  CHECK(hermitian_defect(vorticity(u)) <= 1e-12);
  SpectralVectorField d(u.lattice);
  for (int i = 0; i < 3; ++i) d.coeffs[i] = spectral_derivative(u, i, (i + 1) % 3);
  CHECK(hermitian_defect(d) <= 1e-12);
}

TEST_CASE("checkpoint round trip and rejection") {
  auto u = random_field(2, 16, 21);
  u.time = 0.375;
  std::stringstream ss;
  write_checkpoint(ss, u, 1.25, 0.5, 21);
  const std::string bytes = ss.str();
  CHECK(bytes.substr(0, 4) == "NSHD");
  CHECK(bytes.size() == 4 + 1 + 1 + 4 + 8 * 4 + 2 * 16 * 16 * 16);

  std::stringstream in(bytes);
  const Checkpoint cp = read_checkpoint(in);
  CHECK(cp.header.n == 2);
  CHECK(cp.header.N == 16);
  CHECK(cp.header.alpha == 1.25);
  CHECK(cp.header.nu == 0.5);
  CHECK(cp.header.time == 0.375);
  CHECK(cp.header.seed == 21);
  for (int i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < u.size(); ++j) CHECK(cp.field.coeffs[i][j] == u.coeffs[i][j]);

  std::string bad = bytes;
  bad[0] = 'X';
  std::stringstream b1(bad);
  CHECK_THROWS_AS(read_checkpoint(b1), CheckpointError);
  bad = bytes;
  bad[4] = 9;
  std::stringstream b2(bad);
  CHECK_THROWS_AS(read_checkpoint(b2), CheckpointError);
  std::stringstream b3(bytes.substr(0, bytes.size() - 3));
  CHECK_THROWS_AS(read_checkpoint(b3), CheckpointError);
  bad = bytes;
  bad[6] = 7;  // odd N
  std::stringstream b4(bad);
  CHECK_THROWS_AS(read_checkpoint(b4), CheckpointError);
}
