#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "mri/config.hpp"
#include "mri/experiment.hpp"
#include "mri/guarantee.hpp"
#include "mri/report.hpp"

namespace mri::cli {

namespace {

/// Write to a file when a path is given, else to `out`.
bool emit(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    err << "error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

template <typename Args>
void apply_overrides(RunConfig& c, const Args& args) {
  if (args.seed) c.experiment.seed = *args.seed;
  if (args.out) c.out = *args.out;
  if (args.jobs) c.jobs = *args.jobs;
}

}  // namespace

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = load_run_config(args.config);
    apply_overrides(config, args);
    if (config.jobs == 0) throw ConfigError("jobs must be >= 1", 0);
  } catch (const ConfigError& e) {
    err << "error: " << args.config << ": " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    RunOptions options;
    options.jobs = config.jobs;
    if (!args.quiet) options.progress = [&err](const std::string& line) { err << line << '\n'; };
    const ExperimentResult result = run_iterated_al(config.experiment, options);
    const ExperimentSummary summary = summarise(result);
    write_report(config.out, result, summary);
    out << "wrote " << config.out << "/curves.csv, metrics.csv, ranks.json\n";
    if (!summary.diagnostics.empty()) {
      err << summary.diagnostics.size() << " run(s) failed; see " << config.out << "/diagnostics.txt\n";
      return kExitRuntime;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_print_config(const PrintConfigArgs& args, std::ostream& out, std::ostream& err) {
  RunConfig config = default_run_config();
  try {
    if (args.config) config = load_run_config(*args.config);
    apply_overrides(config, args);
  } catch (const ConfigError& e) {
    err << "error: " << args.config.value_or("") << ": " << e.what() << '\n';
    return kExitUsage;
  }
  out << print_run_config(config);
  return kExitOk;
}

int cmd_analytic(const AnalyticArgs& args, std::ostream& out, std::ostream& err) {
  analytic::MeanEstimates est;
  std::vector<analytic::GridRow> rows;
  try {
    if (!args.case_name.empty()) est = analytic::parse_case(args.case_name);
    if (args.mu1) est.mu1 = *args.mu1;
    if (args.mu2) est.mu2 = *args.mu2;
    est.n = args.n;
    rows = analytic::evaluate_grid(est, args.grid);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::ostringstream csv;
  csv << "x,qc,se_score,rs_density\n";
  for (const auto& r : rows) {
    csv << format_double(r.x) << ',' << format_double(r.qc) << ',' << format_double(r.se_score) << ','
        << format_double(r.rs_density) << '\n';
  }
  return emit(csv.str(), args.out, out, err) ? kExitOk : kExitRuntime;
}

int cmd_guarantee(const GuaranteeArgs& args, std::ostream& out, std::ostream& err) {
  std::ostringstream csv;
  csv << "sigma,lambda_closed_form,lambda_empirical,se\n";
  try {
    if (args.sigmas.empty()) throw std::invalid_argument("at least one sigma is required");
    for (double sigma : args.sigmas) {
      guarantee::NoisePair pair{args.delta, 0.0, sigma};
      const double closed = guarantee::lambda_from_sigma(args.delta, sigma);
      const auto sim = guarantee::simulate_selection(pair, args.trials, args.seed);
      csv << format_double(sigma) << ',' << format_double(closed) << ',' << format_double(sim.lambda) << ','
          << format_double(sim.se) << '\n';
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return emit(csv.str(), args.out, out, err) ? kExitOk : kExitRuntime;
}

int run_main(int argc, char** argv) {
  CLI::App app{"Pool-based active learning experiments with model retraining improvement"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment described by a YAML configuration");
  run_cmd->add_option("--config", run.config, "Configuration file")->required();
  run_cmd->add_option("--seed", run.seed, "Override the master seed");
  run_cmd->add_option("--out", run.out, "Override the output directory");
  run_cmd->add_option("--jobs", run.jobs, "Worker threads");
  run_cmd->add_flag("--quiet", run.quiet, "No progress lines");

  PrintConfigArgs pc;
  auto* pc_cmd = app.add_subcommand("print-config", "Print a configuration with every default written out");
  pc_cmd->add_option("--config", pc.config, "Configuration file (default: built-in example)");
  pc_cmd->add_option("--seed", pc.seed, "Override the master seed");
  pc_cmd->add_option("--out", pc.out, "Override the output directory");
  pc_cmd->add_option("--jobs", pc.jobs, "Worker threads");

  AnalyticArgs an;
  auto* an_cmd = app.add_subcommand("analytic", "Closed-form Q^c on a grid for the two-Gaussian example");
  an_cmd->add_option("--case", an.case_name, "right-shift-0.5, right-shift-0.1, wide or inverted");
  an_cmd->add_option("--mu1", an.mu1, "Estimated class 1 mean");
  an_cmd->add_option("--mu2", an.mu2, "Estimated class 2 mean");
  an_cmd->add_option("--n", an.n, "Training-set size behind the estimates")->capture_default_str();
  an_cmd->add_option("--lo", an.grid.lo, "Grid start")->capture_default_str();
  an_cmd->add_option("--hi", an.grid.hi, "Grid end")->capture_default_str();
  an_cmd->add_option("--step", an.grid.step, "Grid step")->capture_default_str();
  an_cmd->add_option("--out", an.out, "Output CSV (default: stdout)");

  GuaranteeArgs gu;
  auto* gu_cmd = app.add_subcommand("guarantee", "Selection probability of the better of two candidates");
  gu_cmd->add_option("--sigma", gu.sigmas, "Per-estimate noise std values")->delimiter(',')->capture_default_str();
  gu_cmd->add_option("--delta", gu.delta, "Gap between the two true values")->capture_default_str();
  gu_cmd->add_option("--trials", gu.trials, "Monte Carlo trials per sigma")->capture_default_str();
  gu_cmd->add_option("--seed", gu.seed, "Seed")->capture_default_str();
  gu_cmd->add_option("--out", gu.out, "Output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (run_cmd->parsed()) return cmd_run(run, std::cout, std::cerr);
  if (pc_cmd->parsed()) return cmd_print_config(pc, std::cout, std::cerr);
  if (an_cmd->parsed()) {
    if (an.case_name.empty() && !(an.mu1 && an.mu2)) {
      std::cerr << "error: give --case or both --mu1 and --mu2\n";
      return kExitUsage;
    }
    return cmd_analytic(an, std::cout, std::cerr);
  }
  if (gu_cmd->parsed()) return cmd_guarantee(gu, std::cout, std::cerr);
  return kExitUsage;
}

}  // namespace mri::cli
