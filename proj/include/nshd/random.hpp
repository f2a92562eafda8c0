#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace nshd {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// Output is a pure function of (key, counter); no state is carried
/// between calls, so streams are reproducible regardless of traversal
/// order or thread assignment.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}
  explicit Philox4x32(Key key) : key_(key) {}

  Counter operator()(Counter ctr) const;

  /// Two uniforms in [0, 1) with 53 random bits each.
  std::pair<double, double> uniform_pair(const Counter& ctr) const;

  /// Two independent standard normals via the Marsaglia polar method.
  /// ctr[3] is used as the attempt counter and must be zero on entry.
  std::pair<double, double> normal_pair(Counter ctr) const;

 private:
  Key key_;
};

}  // namespace nshd
