#include "nshd/cli.hpp"

#include <algorithm>
#include <optional>

#include <CLI11.hpp>

#include "nshd/config.hpp"
#include "nshd/harness.hpp"
#include "nshd/scaling.hpp"
#include "nshd/verify.hpp"

namespace nshd {

namespace fs = std::filesystem;

namespace {

fs::path resolve_output(const RunConfig& cfg, const std::string& out_flag) {
  if (!out_flag.empty()) return out_flag;
  if (cfg.output_dir) return *cfg.output_dir;
  throw ConfigError("output_dir", "no output directory: pass --out or set output_dir");
}

int cmd_run(const std::string& config, const std::string& out_dir, std::ostream& out) {
  const RunConfig cfg = load_config(config);
  const RunRecord rec = run_experiment(cfg, resolve_output(cfg, out_dir));
  out << "status: " << to_string(rec.status) << '\n'
      << "t_final: " << format_double(rec.summary.t_final) << '\n'
      << "steps: " << rec.summary.steps << '\n'
      << "energy_ratio: " << format_double(rec.summary.energy_ratio()) << '\n'
      << "max_enstrophy: " << format_double(rec.summary.max_enstrophy) << '\n'
      << "output: " << rec.summary_json.parent_path().string() << '\n';
  return exit_code(rec.status);
}

int cmd_sweep(const std::string& config, const std::string& alphas, const std::string& out_dir,
              unsigned threads, std::ostream& out) {
  const RunConfig cfg = load_config(config);
  std::vector<Rational> list;
  try {
    list = parse_alpha_list(alphas);
  } catch (const InvalidArgument& e) {
    throw ConfigError("", e.what());
  }
  const SweepResult res = sweep(cfg, list, resolve_output(cfg, out_dir), threads ? threads : thread_limit());
  out << "alpha_L: " << res.alpha_lions.str() << '\n';
  for (const auto& r : res.rows) {
    out << r.alpha.str() << (r.is_lions ? " *" : "") << ": " << to_string(r.status)
        << " max_enstrophy=" << format_double(r.summary.max_enstrophy)
        << " max_M1=" << format_double(r.summary.max_M1) << '\n';
  }
  return exit_code(res);
}

int cmd_scale_check(const std::string& config, int q, bool as_json, std::ostream& out) {
  const RunConfig cfg = load_config(config);
  const ScaleCheckReport rep = scale_check(cfg, q);
  if (as_json) {
    out << to_json(rep).dump(2) << '\n';
  } else {
    out << "energy_ratio: expected " << format_double(rep.expected_energy_ratio) << " measured "
        << format_double(rep.measured_energy_ratio) << " rel_error " << format_double(rep.energy_ratio_error)
        << (rep.energy_ok() ? " ok" : " FAIL") << '\n'
        << "commutation: steps " << rep.steps << " discrepancy " << format_double(rep.commutation_discrepancy)
        << (rep.commutation_ok() ? " ok" : " FAIL") << '\n';
  }
  return rep.passed() ? kExitOk : kExitCheckFailed;
}

int cmd_exponents(int n, const std::optional<std::string>& alpha_text, std::ostream& out) {
  const Rational lions = lions_exponent(n);
  out << "n: " << n << '\n' << "alpha_L: " << lions.str() << " (" << format_double(lions.to_double()) << ")\n";
  if (!alpha_text) return kExitOk;
  const Rational alpha = Rational::parse(*alpha_text);
  const auto margin = solvability_margin(n, alpha);
  out << "alpha: " << alpha.str() << '\n'
      << "margin: " << margin.margin.str() << " (" << format_double(margin.margin.to_double()) << ")\n"
      << "classification: " << to_string(margin.classification) << '\n';
  if (alpha > Rational(1, 2)) {
    const Rational d = Rational(2) * alpha - Rational(1);
    out << "energy_exponent_q: " << (Rational(4) * alpha - Rational(2) - Rational(n)).str() << '\n'
        << "energy_exponent_lambda: " << (Rational(n) / d - Rational(2)).str() << '\n'
        << "mu_exponent: " << (Rational(1) / d).str() << '\n'
        << "tau_exponent: " << (Rational(2) * alpha / d).str() << '\n';
  } else {
    out << "scaling: degenerate (alpha <= 1/2)\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& filter, bool as_json, const std::vector<std::string>& faults,
               std::ostream& out) {
  VerifyOptions opts;
  opts.filter = filter;
  for (const auto& f : faults) {
    if (f == "flip-dissipation") opts.fault.flip_dissipation_sign = true;
    if (f == "skip-dealias") opts.fault.skip_dealias = true;
  }
  const VerifyReport rep = verify(opts);
  if (as_json) {
    out << to_json(rep).dump(2) << '\n';
  } else {
    for (const auto& r : rep.results) {
      out << (r.passed ? "PASS " : "FAIL ") << r.name << " value=" << format_double(r.value)
          << " tol=" << format_double(r.tolerance) << '\n';
    }
    out << (rep.passed() ? "all properties passed" : "some properties failed") << '\n';
  }
  return rep.passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudo-spectral hyperdissipative Navier-Stokes solver", "nshd"};
  app.require_subcommand(1);

  std::string config, out_dir, alphas, filter;
  std::optional<std::string> alpha;
  int q = 2, n = 0;
  unsigned threads = 0;
  bool as_json = false;
  std::vector<std::string> faults;

  auto* run = app.add_subcommand("run", "Run one configuration");
  run->add_option("--config", config, "JSON run configuration")->required();
  run->add_option("--out", out_dir, "Output directory (overrides output_dir)");

  auto* sw = app.add_subcommand("sweep", "Run a configuration for several alpha values");
  sw->add_option("--config", config, "JSON run configuration")->required();
  sw->add_option("--alphas", alphas, "Comma-separated alphas, e.g. 1,5/4,3/2")->required();
  sw->add_option("--out", out_dir, "Output directory (overrides output_dir)");
  sw->add_option("--threads", threads, "Concurrent runs (default NSHD_THREADS or core count)");

  auto* sc = app.add_subcommand("scale-check", "Check discrete scaling and commutation");
  sc->add_option("--config", config, "JSON run configuration")->required();
  sc->add_option("--q", q, "Integer scale factor")->check(CLI::Range(1, 64));
  sc->add_flag("--json", as_json, "Machine-readable report");

  auto* ex = app.add_subcommand("exponents", "Print critical exponents");
  ex->add_option("--n", n, "Dimension")->required()->check(CLI::Range(2, 1 << 20));
  ex->add_option("--alpha", alpha, "Dissipation exponent (rational, e.g. 5/4)");

  auto* vf = app.add_subcommand("verify", "Run the built-in property suite");
  vf->add_option("--filter", filter, "Only properties whose name contains this text");
  vf->add_flag("--json", as_json, "Machine-readable report");
  vf->add_option("--inject-fault", faults, "Deliberate defect: flip-dissipation, skip-dealias")
      ->check(CLI::IsMember({"flip-dissipation", "skip-dealias"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (*run) return cmd_run(config, out_dir, out);
    if (*sw) return cmd_sweep(config, alphas, out_dir, threads, out);
    if (*sc) return cmd_scale_check(config, q, as_json, out);
    if (*ex) return cmd_exponents(n, alpha, out);
    if (*vf) return cmd_verify(filter, as_json, faults, out);
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitOutputError;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace nshd
