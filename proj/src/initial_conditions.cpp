#include "nshd/initial_conditions.hpp"

#include <cmath>
#include <string>

#include "nshd/diagnostics.hpp"
#include "nshd/errors.hpp"
#include "nshd/operators.hpp"
#include "nshd/random.hpp"

namespace nshd {

void InitialConditionSpec::validate(const WavenumberLattice& lat) const {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw InvalidArgument("amplitude: must be finite and > 0");
  }
  if (kind == InitialConditionKind::random_band) {
    if (k_min < 1) throw InvalidArgument("band: k_min must be >= 1");
    if (k_max < k_min) throw InvalidArgument("band: k_max must be >= k_min");
    if (3 * k_max >= lat.modes_per_axis()) throw InvalidArgument("band: k_max must be < N/3");
    if (!std::isfinite(spectrum_slope)) throw InvalidArgument("spectrum_slope: must be finite");
  }
}

namespace {

enum class Trig { sin, cos };

// Adds amp * prod_a trig_a(x_a) to component c; each factor has |k_a| = 1:
// cos x = (e^{ix} + e^{-ix})/2, sin x = (e^{ix} - e^{-ix})/(2i).
void add_separable(SpectralVectorField& u, int c, double amp, const std::vector<Trig>& factors) {
  const auto& lat = *u.lattice;
  const int n = lat.dim();
  const int combos = 1 << n;
  for (int bits = 0; bits < combos; ++bits) {
    ModeVector k{0, 0, 0};
    Complex coeff = amp;
    for (int a = 0; a < n; ++a) {
      const int s = (bits >> a) & 1 ? -1 : 1;
      k[a] = s;
      coeff *= factors[a] == Trig::cos ? Complex(0.5, 0.0) : Complex(0.0, -0.5 * s);
    }
    u.coeffs[c][lat.index_of(k)] += coeff;
  }
}

bool canonical_half(const ModeVector& k, int n) {
  for (int a = 0; a < n; ++a) {
    if (k[a] > 0) return true;
    if (k[a] < 0) return false;
  }
  return false;
}

}  // namespace

SpectralVectorField taylor_green(LatticePtr lattice, double amplitude) {
  SpectralVectorField u(lattice);
  if (lattice->dim() == 2) {
    add_separable(u, 0, amplitude, {Trig::sin, Trig::cos});
    add_separable(u, 1, -amplitude, {Trig::cos, Trig::sin});
  } else {
    add_separable(u, 0, amplitude, {Trig::sin, Trig::cos, Trig::cos});
    add_separable(u, 1, -amplitude, {Trig::cos, Trig::sin, Trig::cos});
  }
  return u;
}

SpectralVectorField random_band_limited(LatticePtr lattice, const InitialConditionSpec& spec) {
  const auto& lat = *lattice;
  spec.validate(lat);
  const int n = lat.dim();
  const Philox4x32 rng(spec.seed);

  SpectralVectorField u(lattice);
  std::size_t count = 0;
  for (std::size_t idx = 0; idx < lat.total_modes(); ++idx) {
    const double kk = lat.kmod(idx);
    if (kk < spec.k_min || kk > spec.k_max || !lat.dealias_mask(idx)) continue;
    const ModeVector k = lat.k_of(idx);
    if (!canonical_half(k, n)) continue;
    ++count;
    const double shape = std::pow(kk, spec.spectrum_slope);
    const std::size_t mirror = lat.mirror_index(idx);
    for (int i = 0; i < n; ++i) {
      const auto [re, im] = rng.normal_pair(
          {static_cast<std::uint32_t>(idx), static_cast<std::uint32_t>(idx >> 32),
           static_cast<std::uint32_t>(i), 0u});
      const Complex z = shape * Complex(re, im);
      u.coeffs[i][idx] = z;
      u.coeffs[i][mirror] = std::conj(z);
    }
  }
  if (count == 0) {
    throw EmptyBand("no modes with " + std::to_string(spec.k_min) + " <= |k| <= " +
                    std::to_string(spec.k_max));
  }

  u = leray_project(std::move(u));
  const double e = energy(u);
  if (e == 0.0) throw EmptyBand("band admits no divergence-free modes");
  const double scale = spec.amplitude / std::sqrt(e);
  for (auto& c : u.coeffs)
    for (auto& z : c) z *= scale;
  return u;
}

SpectralVectorField make_initial_condition(LatticePtr lattice, const InitialConditionSpec& spec) {
  spec.validate(*lattice);
  if (spec.kind == InitialConditionKind::taylor_green) return taylor_green(std::move(lattice), spec.amplitude);
  return random_band_limited(std::move(lattice), spec);
}

const char* to_string(InitialConditionKind kind) {
  return kind == InitialConditionKind::taylor_green ? "taylor_green" : "random_band";
}

}  // namespace nshd
