#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nshd/config.hpp"
#include "nshd/diagnostics_record.hpp"
#include "nshd/dynamics.hpp"
#include "nshd/errors.hpp"
#include "nshd/rational.hpp"

namespace nshd {

/// Process exit codes shared by the CLI subcommands.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,
  kExitDiverged = 2,
  kExitResolutionLoss = 3,
  kExitOutputError = 4,
  kExitCheckFailed = 5,
};

int exit_code(RunStatus status);

/// Output directory or file could not be created or written.
class OutputError : public Error {
 public:
  using Error::Error;
};

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);
std::string format_flags(const DiagnosticFlags& flags);

/// Streams diagnostics rows as CSV:
/// step,t,dt,energy,dissipation_rate,enstrophy,production,max_velocity,
/// M{m}_c{i}... (configured orders, 1-based components), H{beta}...,
/// tail_fraction,flags.
class DiagnosticsCsvWriter {
 public:
  DiagnosticsCsvWriter(std::ostream& out, const SolverConfig& cfg);
  void write(const DiagnosticsRecord& record);

 private:
  std::ostream& out_;
  int dim_;
  std::vector<int> moment_orders_;
  std::vector<double> sobolev_orders_;
};

struct RunSummary {
  double t_final = 0.0;
  std::uint64_t steps = 0;
  double initial_energy = 0.0;
  double final_energy = 0.0;
  double max_enstrophy = 0.0;
  double max_M1 = 0.0;  // max over time and components
  std::optional<double> resolution_loss_time;
  double energy_ratio() const { return initial_energy > 0.0 ? final_energy / initial_energy : 0.0; }
};

struct RunRecord {
  RunConfig config;
  RunStatus status = RunStatus::completed;
  RunSummary summary;
  std::string started_at;
  std::string finished_at;
  double wall_seconds = 0.0;
  std::filesystem::path diagnostics_csv;
  std::filesystem::path checkpoint;
  std::filesystem::path summary_json;
};

nlohmann::json to_json(const RunRecord& record);

/// Runs one configuration (from restart_from when set) and writes diagnostics.csv, final.nshd and
/// summary.json into `out_dir`. Throws OutputError when the directory is
/// not writable.
RunRecord run_experiment(const RunConfig& cfg, const std::filesystem::path& out_dir);

/// Sorted alpha values; throws InvalidArgument on duplicates or bad entries.
std::vector<Rational> parse_alpha_list(const std::string& text);

/// Worker threads for sweeps: NSHD_THREADS if set, else hardware concurrency.
unsigned thread_limit();

struct SweepRow {
  Rational alpha;
  bool is_lions = false;
  RunStatus status = RunStatus::completed;
  RunSummary summary;
};

struct SweepResult {
  int n = 2;
  Rational alpha_lions;
  std::vector<SweepRow> rows;  // ascending alpha
};

/// One run per alpha, each in out_dir/alpha_<num>_<den>, plus
/// sweep_summary.csv and sweep_summary.json in out_dir.
SweepResult sweep(const RunConfig& base, const std::vector<Rational>& alphas,
                  const std::filesystem::path& out_dir, unsigned threads);

int exit_code(const SweepResult& result);

inline constexpr double kEnergyRatioTolerance = 1e-12;
inline constexpr double kCommutationTolerance = 1e-6;

struct ScaleCheckReport {
  int q = 2;
  int n = 2;
  double alpha = 1.0;
  double t_end = 0.0;
  std::uint64_t steps = 0;
  double dt = 0.0;
  double expected_energy_ratio = 0.0;  // q^{4 alpha - 2 - n}
  double measured_energy_ratio = 0.0;
  double energy_ratio_error = 0.0;  // relative
  double commutation_discrepancy = 0.0;
  bool energy_ok() const { return energy_ratio_error <= kEnergyRatioTolerance; }
  bool commutation_ok() const { return commutation_discrepancy <= kCommutationTolerance; }
  bool passed() const { return energy_ok() && commutation_ok(); }
};

/// Checks the energy scaling of the initial field and that evolving then
/// rescaling matches rescaling then evolving over [0, t_end].
ScaleCheckReport scale_check(const RunConfig& cfg, int q);

nlohmann::json to_json(const ScaleCheckReport& report);

}  // namespace nshd
