#pragma once

#include <cstdint>
#include <string>

#include "nshd/field.hpp"

namespace nshd {

enum class InitialConditionKind { taylor_green, random_band };

struct InitialConditionSpec {
  InitialConditionKind kind = InitialConditionKind::taylor_green;
  double amplitude = 1.0;
  std::uint64_t seed = 0;
  int k_min = 1;
  int k_max = 4;
  double spectrum_slope = 0.0;

  /// Throws InvalidArgument naming the offending field.
  void validate(const WavenumberLattice& lat) const;
};

/// n = 2: A (sin x cos y, -cos x sin y);
/// n = 3: A (sin x cos y cos z, -cos x sin y cos z, 0).
SpectralVectorField taylor_green(LatticePtr lattice, double amplitude);

/// Seeded random field supported on k_min <= |k| <= k_max, Leray-projected
/// and normalized so that its energy equals amplitude^2.
///
/// For every mode k in the band whose first nonzero component is positive,
/// component i draws a complex Gaussian (re, im) from
/// Philox4x32(seed) at counter {flat index of k, 0, i, attempt}, polar
/// method; the value is scaled by |k|^spectrum_slope and mirrored as its
/// conjugate onto -k. Throws EmptyBand when no mode qualifies.
SpectralVectorField random_band_limited(LatticePtr lattice, const InitialConditionSpec& spec);

SpectralVectorField make_initial_condition(LatticePtr lattice, const InitialConditionSpec& spec);

const char* to_string(InitialConditionKind kind);

}  // namespace nshd
