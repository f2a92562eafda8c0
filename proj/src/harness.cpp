#include "nshd/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "nshd/checkpoint.hpp"
#include "nshd/diagnostics.hpp"
#include "nshd/initial_conditions.hpp"
#include "nshd/scaling.hpp"

namespace nshd {

using nlohmann::json;
namespace fs = std::filesystem;

int exit_code(RunStatus status) {
  switch (status) {
    case RunStatus::completed:
      return kExitOk;
    case RunStatus::diverged:
      return kExitDiverged;
    case RunStatus::resolution_loss:
      return kExitResolutionLoss;
  }
  return kExitDiverged;
}

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, r.ptr);
}

std::string format_flags(const DiagnosticFlags& flags) {
  if (flags.diverged && flags.resolution_loss) return "diverged|resolution_loss";
  if (flags.diverged) return "diverged";
  if (flags.resolution_loss) return "resolution_loss";
  return "none";
}

DiagnosticsCsvWriter::DiagnosticsCsvWriter(std::ostream& out, const SolverConfig& cfg)
    : out_(out), dim_(cfg.n), moment_orders_(cfg.moment_orders), sobolev_orders_(cfg.sobolev_orders) {
  out_ << "step,t,dt,energy,dissipation_rate,enstrophy,production,max_velocity";
  for (int m : moment_orders_)
    for (int i = 1; i <= dim_; ++i) out_ << ",M" << m << "_c" << i;
  for (double b : sobolev_orders_) out_ << ",H" << format_double(b);
  out_ << ",tail_fraction,flags\n";
}

void DiagnosticsCsvWriter::write(const DiagnosticsRecord& r) {
  out_ << r.step << ',' << format_double(r.t) << ',' << format_double(r.dt) << ','
       << format_double(r.energy) << ',' << format_double(r.dissipation_rate) << ','
       << format_double(r.enstrophy) << ',' << format_double(r.enstrophy_production) << ','
       << format_double(r.max_velocity);
  for (int m : moment_orders_)
    for (int i = 0; i < dim_; ++i) out_ << ',' << format_double(r.moment(i, m));
  for (double b : sobolev_orders_) out_ << ',' << format_double(r.sobolev.at(b));
  out_ << ',' << format_double(r.tail_fraction) << ',' << format_flags(r.flags) << '\n';
}

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

void ensure_directory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw OutputError("cannot create output directory " + dir.string() +
                      (ec ? ": " + ec.message() : std::string()));
  }
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw OutputError("cannot write " + path.string());
  return out;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json to_json(const RunSummary& s) {
  return {{"t_final", s.t_final},
          {"steps", s.steps},
          {"initial_energy", s.initial_energy},
          {"final_energy", s.final_energy},
          {"energy_ratio", s.energy_ratio()},
          {"max_enstrophy", s.max_enstrophy},
          {"max_M1", s.max_M1},
          {"resolution_loss_time", optional_json(s.resolution_loss_time)}};
}

std::string alpha_label(const Rational& a) {
  std::string s = "alpha_" + std::to_string(a.num()) + "_" + std::to_string(a.den());
  std::replace(s.begin(), s.end(), '-', 'm');
  return s;
}

double l2_norm(const SpectralVectorField& u) {
  double s = 0.0;
  for (const auto& c : u.coeffs)
    for (const auto& z : c) s += std::norm(z);
  return std::sqrt(s);
}

double l2_difference(const SpectralVectorField& a, const SpectralVectorField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < a.coeffs[i].size(); ++j) s += std::norm(a.coeffs[i][j] - b.coeffs[i][j]);
  return std::sqrt(s);
}

SolverState initial_state(const RunConfig& cfg) {
  if (!cfg.restart_from) {
    return SolverState{make_initial_condition(build_lattice(cfg.solver.n, cfg.solver.N), cfg.initial), 0.0, 0};
  }
  Checkpoint cp;
  try {
    cp = read_checkpoint(*cfg.restart_from);
  } catch (const CheckpointError& e) {
    throw ConfigError("restart_from", e.what());
  }
  if (cp.header.n != cfg.solver.n || cp.header.N != cfg.solver.N) {
    throw ConfigError("restart_from", "checkpoint lattice (n=" + std::to_string(cp.header.n) +
                                          ", N=" + std::to_string(cp.header.N) + ") does not match solver");
  }
  const double t = cp.header.time;
  return SolverState{std::move(cp.field), t, 0};
}

}  // namespace

json to_json(const RunRecord& r) {
  return {{"status", to_string(r.status)},
          {"exit_code", exit_code(r.status)},
          {"config", to_json(r.config)},
          {"summary", to_json(r.summary)},
          {"started_at", r.started_at},
          {"finished_at", r.finished_at},
          {"wall_seconds", r.wall_seconds},
          {"files",
           {{"diagnostics", r.diagnostics_csv.filename().string()},
            {"checkpoint", r.checkpoint.filename().string()}}}};
}

RunRecord run_experiment(const RunConfig& cfg, const fs::path& out_dir) {
  cfg.solver.validate();
  ensure_directory(out_dir);

  RunRecord rec;
  rec.config = cfg;
  rec.diagnostics_csv = out_dir / "diagnostics.csv";
  rec.checkpoint = out_dir / "final.nshd";
  rec.summary_json = out_dir / "summary.json";
  rec.started_at = utc_now();
  const auto wall0 = std::chrono::steady_clock::now();

  std::ofstream csv = open_output(rec.diagnostics_csv);
  DiagnosticsCsvWriter writer(csv, cfg.solver);

  SolverState state = initial_state(cfg);

  RunSummary& s = rec.summary;
  bool first = true;
  const auto sink = [&](const DiagnosticsRecord& r) {
    writer.write(r);
    if (first) {
      s.initial_energy = r.energy;
      first = false;
    }
    s.final_energy = r.energy;
    s.t_final = r.t;
    s.steps = r.step;
    s.max_enstrophy = std::max(s.max_enstrophy, r.enstrophy);
    for (int i = 0; i < cfg.solver.n; ++i) s.max_M1 = std::max(s.max_M1, r.moment(i, 1.0));
    if (r.flags.resolution_loss && !s.resolution_loss_time) s.resolution_loss_time = r.t;
  };
  const AdvanceResult result = advance(std::move(state), cfg.solver, sink);
  rec.status = result.status;
  csv.flush();
  if (!csv) throw OutputError("failed writing " + rec.diagnostics_csv.string());

  try {
    write_checkpoint(rec.checkpoint, result.state.u, cfg.solver.alpha, cfg.solver.nu, cfg.initial.seed);
  } catch (const CheckpointError& e) {
    throw OutputError(e.what());
  }

  rec.finished_at = utc_now();
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  std::ofstream js = open_output(rec.summary_json);
  js << to_json(rec).dump(2) << '\n';
  if (!js) throw OutputError("failed writing " + rec.summary_json.string());
  return rec;
}

std::vector<Rational> parse_alpha_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InvalidArgument("alphas: empty entry");
    const Rational a = Rational::parse(item.substr(b, e - b + 1));
    if (a.sign() <= 0) throw InvalidArgument("alphas: " + a.str() + " must be positive");
    out.push_back(a);
  }
  if (out.empty()) throw InvalidArgument("alphas: no values given");
  std::sort(out.begin(), out.end());
  const auto dup = std::adjacent_find(out.begin(), out.end());
  if (dup != out.end()) throw InvalidArgument("alphas: duplicate value " + dup->str());
  return out;
}

unsigned thread_limit() {
  if (const char* env = std::getenv("NSHD_THREADS")) {
    unsigned v = 0;
    const std::string_view s(env);
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec == std::errc() && r.ptr == s.data() + s.size() && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult sweep(const RunConfig& base, const std::vector<Rational>& alphas, const fs::path& out_dir,
                  unsigned threads) {
  if (alphas.empty()) throw InvalidArgument("alphas: no values given");
  if (!std::is_sorted(alphas.begin(), alphas.end()) ||
      std::adjacent_find(alphas.begin(), alphas.end()) != alphas.end()) {
    throw InvalidArgument("alphas: must be strictly increasing");
  }
  ensure_directory(out_dir);

  SweepResult result;
  result.n = base.solver.n;
  result.alpha_lions = lions_exponent(base.solver.n);
  result.rows.resize(alphas.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < alphas.size(); i = next++) {
      try {
        RunConfig cfg = base;
        cfg.solver.alpha = alphas[i].to_double();
        cfg.alpha_exact = alphas[i];
        const RunRecord rec = run_experiment(cfg, out_dir / alpha_label(alphas[i]));
        result.rows[i] = SweepRow{alphas[i], alphas[i] == result.alpha_lions, rec.status, rec.summary};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(alphas.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::ofstream csv = open_output(out_dir / "sweep_summary.csv");
  csv << "alpha,alpha_value,is_lions,status,max_enstrophy,max_M1,resolution_loss_time,energy_ratio\n";
  json rows = json::array();
  for (const auto& r : result.rows) {
    csv << r.alpha.str() << ',' << format_double(r.alpha.to_double()) << ',' << (r.is_lions ? 1 : 0) << ','
        << to_string(r.status) << ',' << format_double(r.summary.max_enstrophy) << ','
        << format_double(r.summary.max_M1) << ','
        << (r.summary.resolution_loss_time ? format_double(*r.summary.resolution_loss_time) : std::string())
        << ',' << format_double(r.summary.energy_ratio()) << '\n';
    rows.push_back({{"alpha", r.alpha.str()},
                    {"alpha_value", r.alpha.to_double()},
                    {"is_lions", r.is_lions},
                    {"classification", to_string(solvability_margin(result.n, r.alpha).classification)},
                    {"status", to_string(r.status)},
                    {"max_enstrophy", r.summary.max_enstrophy},
                    {"max_M1", r.summary.max_M1},
                    {"resolution_loss_time", optional_json(r.summary.resolution_loss_time)},
                    {"energy_ratio", r.summary.energy_ratio()},
                    {"directory", alpha_label(r.alpha)}});
  }
  if (!csv) throw OutputError("failed writing sweep_summary.csv");
  std::ofstream js = open_output(out_dir / "sweep_summary.json");
  js << json{{"n", result.n},
             {"alpha_lions", result.alpha_lions.str()},
             {"alpha_lions_value", result.alpha_lions.to_double()},
             {"base_config", to_json(base)},
             {"runs", rows}}
            .dump(2)
     << '\n';
  if (!js) throw OutputError("failed writing sweep_summary.json");
  return result;
}

int exit_code(const SweepResult& result) {
  int code = kExitOk;
  for (const auto& r : result.rows) {
    if (r.status == RunStatus::diverged) return kExitDiverged;
    if (r.status == RunStatus::resolution_loss) code = kExitResolutionLoss;
  }
  return code;
}

ScaleCheckReport scale_check(const RunConfig& cfg, int q) {
  if (q < 1) throw InvalidArgument("q: must be a positive integer");
  cfg.solver.validate();
  const SolverConfig& sc = cfg.solver;
  make_scale_transform(1.0, sc.alpha, sc.n);  // rejects alpha <= 1/2

  const auto lattice = build_lattice(sc.n, sc.N);
  const SpectralVectorField u0 = make_initial_condition(lattice, cfg.initial);

  ScaleCheckReport rep;
  rep.q = q;
  rep.n = sc.n;
  rep.alpha = sc.alpha;
  rep.t_end = sc.t_end;
  rep.expected_energy_ratio = std::pow(static_cast<double>(q), 4.0 * sc.alpha - 2.0 - sc.n);
  rep.measured_energy_ratio = scaled_energy_ratio(u0, q, sc.alpha);
  rep.energy_ratio_error = std::abs(rep.measured_energy_ratio - rep.expected_energy_ratio) / rep.expected_energy_ratio;

  const SpectralVectorField v0 = apply_discrete_rescale(u0, q, sc.alpha);
  if (sc.t_end <= 0.0) return rep;

  const double dt_cfl = cfl_dt(u0, sc);
  rep.steps = static_cast<std::uint64_t>(std::ceil(sc.t_end / dt_cfl - 1e-12));
  rep.dt = sc.t_end / static_cast<double>(rep.steps);
  const double time_factor = std::pow(static_cast<double>(q), 2.0 * sc.alpha);

  const SolverState a = integrate(SolverState{u0, 0.0, 0}, sc, rep.dt, rep.steps);
  const SolverState b = integrate(SolverState{v0, 0.0, 0}, sc, rep.dt / time_factor, rep.steps);
  const TruncatedRescale ra = apply_discrete_rescale_truncating(a.u, q, sc.alpha);
  const double diff = l2_difference(ra.field, b.u);
  const double norm = l2_norm(b.u);
  const double err = std::hypot(diff, ra.dropped_l2);
  rep.commutation_discrepancy = norm > 0.0 ? err / norm : err;
  return rep;
}

json to_json(const ScaleCheckReport& r) {
  return {{"q", r.q},
          {"n", r.n},
          {"alpha", r.alpha},
          {"t_end", r.t_end},
          {"steps", r.steps},
          {"dt", r.dt},
          {"expected_energy_ratio", r.expected_energy_ratio},
          {"measured_energy_ratio", r.measured_energy_ratio},
          {"energy_ratio_error", r.energy_ratio_error},
          {"energy_ratio_tolerance", kEnergyRatioTolerance},
          {"commutation_discrepancy", r.commutation_discrepancy},
          {"commutation_tolerance", kCommutationTolerance},
          {"passed", r.passed()}};
}

}  // namespace nshd
