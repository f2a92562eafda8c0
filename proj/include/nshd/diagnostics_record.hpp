#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace nshd {

struct DiagnosticFlags {
  bool diverged = false;
  bool resolution_loss = false;
};

/// One diagnostic snapshot of a run.
struct DiagnosticsRecord {
  double t = 0.0;
  std::uint64_t step = 0;
  double dt = 0.0;
  double energy = 0.0;
  double dissipation_rate = 0.0;
  double enstrophy = 0.0;
  double enstrophy_production = 0.0;
  double max_velocity = 0.0;
  /// order -> M_order(u_i) for each component i (0-based).
  std::map<double, std::vector<double>> moments;
  /// m -> sum_k |k|^{m+1} |p(k)|, the pressure term of the moment inequality.
  std::map<int, double> pressure_moment;
  /// beta -> ||u||_{H^beta}.
  std::map<double, double> sobolev;
  double tail_fraction = 0.0;
  DiagnosticFlags flags;

  /// Moment lookup tolerant to the last few ulps of a computed order.
  double moment(int component, double order) const;
};

}  // namespace nshd
