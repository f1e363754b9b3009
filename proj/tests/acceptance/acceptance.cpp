// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>

#include "mri/analytic.hpp"
#include "mri/config.hpp"
#include "mri/experiment.hpp"
#include "mri/guarantee.hpp"
#include "mri/metrics.hpp"
#include "mri/ranking.hpp"
#include "mri/report.hpp"
#include "mri/strategies.hpp"
#include "oracles.hpp"

using namespace mri;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

std::size_t jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

fs::path work_dir() {
  const fs::path p = fs::current_path() / "acceptance_out";
  fs::create_directories(p);
  return p;
}

// --- 1 ---------------------------------------------------------------------
Outcome guarantee_reproduction() {
  Outcome o;
  const std::size_t trials = 100000;
  const double delta = 1.0;
  for (double sigma : {0.1, 1.0, 10.0}) {
    const double want = 0.5 + 0.5 * std::erf(delta / (2.0 * sigma));
    const auto f = guarantee::simulate_selection({delta, 0.0, sigma}, trials, 20240601);
    const double se = std::sqrt(want * (1.0 - want) / double(trials));
    o.require(std::abs(f.lambda - want) <= 3.0 * se + 1e-15,
              "sigma=" + fmt(sigma) + " empirical " + fmt(f.lambda) + " vs " + fmt(want));
    o.note("sigma=" + fmt(sigma) + ": " + fmt(f.lambda) + " vs " + fmt(want, 5));
  }
  const auto tiny = guarantee::simulate_selection({delta, 0.0, 1e-9}, trials, 7);
  o.require(tiny.lambda == 1.0, "sigma=1e-9 gives " + fmt(tiny.lambda, 17));
  const auto huge = guarantee::simulate_selection({delta, 0.0, 1e6}, trials, 7);
  o.require(std::abs(huge.lambda - 0.5) <= 3.0 * std::sqrt(0.25 / double(trials)),
            "sigma=1e6 gives " + fmt(huge.lambda));
  o.note("sigma=1e-9: " + fmt(tiny.lambda) + ", sigma=1e6: " + fmt(huge.lambda));
  return o;
}

// --- 2 ---------------------------------------------------------------------
Outcome analytic_example() {
  Outcome o;
  using namespace analytic;
  const auto rows = [](double a, double b) { return evaluate_grid({a, b, 18}, Grid{-5.0, 5.0, 0.01}); };
  const auto wide = rows(-1.1, 1.1);
  double wide_max = -1.0;
  for (const auto& r : wide) wide_max = std::max(wide_max, r.qc);
  o.require(wide_max < 0.0, "(-1.1, 1.1) max Q^c " + fmt(wide_max));
  o.note("(-1.1,1.1) max Q^c " + fmt(wide_max, 3));

  std::map<std::string, std::vector<GridRow>> cases{{"(-1.1,1.1)", wide},
                                                     {"(-0.5,1.5)", rows(-0.5, 1.5)},
                                                     {"(-0.9,1.1)", rows(-0.9, 1.1)},
                                                     {"(1,-1)", rows(1.0, -1.0)}};
  for (const char* name : {"(-0.5,1.5)", "(-0.9,1.1)"}) {
    const double x = cases[name][grid_argmax(cases[name])].x;
    o.require(x < 0.0, std::string(name) + " argmax at " + fmt(x));
    o.note(std::string(name) + " argmax " + fmt(x));
  }
  const auto& inv = cases["(1,-1)"];
  const std::size_t best = grid_argmax(inv);
  o.require(best == 0 || best + 1 == inv.size(), "(1,-1) argmax at " + fmt(inv[best].x));
  o.note("(1,-1) argmax " + fmt(inv[best].x));

  const std::map<std::string, MeanEstimates> est{{"(-1.1,1.1)", {-1.1, 1.1, 18}},
                                                  {"(-0.5,1.5)", {-0.5, 1.5, 18}},
                                                  {"(-0.9,1.1)", {-0.9, 1.1, 18}},
                                                  {"(1,-1)", {1.0, -1.0, 18}}};
  for (const auto& [name, grid] : cases) {
    const double t = se_selection(est.at(name));
    const double x = grid[grid_argmax(grid)].x;
    o.require(std::abs(x - t) > 0.005, name + " SE selection " + fmt(t) + " is the argmax");
  }
  return o;
}

// --- 3 ---------------------------------------------------------------------
Outcome oracle_extremes() {
  Outcome o;
  ExperimentConfig c;
  ProblemRef p;
  p.name = kFourGaussian;
  p.pool = 60;
  c.problems = {p};
  c.classifiers = {ClassifierSpec::knn(5)};
  c.strategies = {StrategyKind::Random, StrategyKind::OracleMax, StrategyKind::OracleMin};
  c.replicates = 10;
  c.seed = 31;
  const auto result = run_iterated_al(c, {jobs(), {}});
  std::map<std::string, std::vector<std::vector<double>>> curves;
  for (const auto& cell : result.cells) {
    o.require(cell.ok(), cell.strategy + " replicate " + std::to_string(cell.replicate) + ": " + cell.error);
    if (cell.ok()) curves[cell.strategy].push_back(cell.curve.loss);
  }
  if (!o.pass) return o;
  const auto mx = mean_curve(curves["oracle-max"]), mn = mean_curve(curves["oracle-min"]),
             rs = mean_curve(curves["rs"]);
  std::size_t above_min = 0, below_rs = 0;
  for (std::size_t i = 1; i < mx.size(); ++i) above_min += mx[i] > mn[i];
  for (std::size_t i = 0; i < mx.size(); ++i) below_rs += mx[i] <= rs[i];
  const double frac = double(below_rs) / double(mx.size());
  o.require(above_min == 0, std::to_string(above_min) + " steps with oracle-max above oracle-min");
  o.require(frac >= 0.9, "oracle-max <= rs on only " + fmt(frac) + " of steps");
  o.note("oracle-max <= oracle-min on all " + std::to_string(mx.size() - 1) + " later steps, <= rs on " +
         fmt(100.0 * frac, 4) + "% of steps");
  return o;
}

// --- 4 ---------------------------------------------------------------------
Outcome product_unbiasedness() {
  Outcome o;
  guarantee::ProductSetup setup;
  setup.p = {0.2, 0.5, 0.3};
  setup.loss = {0.3, 0.15, 0.25};
  setup.p_noise = 0.1;
  setup.loss_noise = 0.08;
  const auto indep = guarantee::simulate_product(setup, 100000, 99);
  o.require(indep.within(3.0), "independent mean " + fmt(indep.mean) + " vs " + fmt(indep.truth));
  setup.coupling = 1.5;
  const auto corr = guarantee::simulate_product(setup, 100000, 99);
  o.require(!corr.within(3.0), "correlated estimators were not detected");
  o.note("independent: " + fmt(indep.mean) + " (truth " + fmt(indep.truth) + ", SE " + fmt(indep.se, 3) +
         "); correlated: " + fmt(corr.mean) + ", " + fmt(std::abs(corr.mean - corr.truth) / corr.se, 3) + " SE off");
  return o;
}

// --- 5 ---------------------------------------------------------------------
Outcome efelc_equivalence() {
  Outcome o;
  const ClassifierSpec spec = ClassifierSpec::knn(1);
  Rng rng = make_rng(5150);
  std::size_t instances = 0, bitwise = 0;
  double worst = 0.0;
  const auto names = abstract_problem_names();
  for (std::uint64_t inst = 0; instances < 25; ++inst) {
    const std::string& name = names[inst % names.size()];
    const std::size_t n_lab = 2 + uniform_index(rng, 8), n_pool = 1 + uniform_index(rng, 5);
    const Dataset labelled = generate_abstract_problem(name, n_lab, 1000 + inst);
    const Dataset pool = generate_abstract_problem(name, n_pool, 2000 + inst);
    std::vector<std::size_t> cand(pool.size());
    std::iota(cand.begin(), cand.end(), 0);
    const TrainedModel model = train(spec, labelled);
    SelectionState s{spec, model, labelled, pool, cand, inst, 0};
    const auto got = score_efelc(s);
    const auto want = oracle::efelc(spec, labelled, pool, cand, 0);
    for (std::size_t i = 0; i < got.size(); ++i) {
      const double diff = std::abs(got[i] - want[i]);
      worst = std::max(worst, diff);
      bitwise += got[i] == want[i];
      o.require(diff <= 1e-12, "instance " + std::to_string(inst) + " differs by " + fmt(diff));
    }
    ++instances;
  }
  o.note(std::to_string(instances) + " instances, worst difference " + fmt(worst) + ", " + std::to_string(bitwise) +
         " scores bit-identical");
  return o;
}

// --- 6 ---------------------------------------------------------------------
Outcome desk_scale_ranking() {
  Outcome o;
  ExperimentConfig c;
  for (const char* name : {kTwoGaussian, kFourGaussian, kQuadraticBoundary}) {
    ProblemRef p;
    p.name = name;
    p.pool = 60;
    c.problems.push_back(p);
  }
  c.classifiers = {ClassifierSpec::lda(), ClassifierSpec::knn(5)};
  c.strategies = {StrategyKind::Random, StrategyKind::Entropy, StrategyKind::BootstrapMri};
  c.strategy.n_b = 25;
  c.replicates = 10;
  c.seed = 2024;
  const auto result = run_iterated_al(c, {jobs(), {}});
  const auto summary = summarise(result);
  o.require(summary.diagnostics.empty(), std::to_string(summary.diagnostics.size()) + " failed runs");
  const fs::path out = work_dir() / "desk_scale";
  write_report(out, result, summary);

  std::map<std::pair<std::string, std::string>, std::map<std::string, double>> aua;
  for (const auto& r : summary.metrics) {
    if (r.scope == MetricScope::MeanCurve) aua[{r.problem, r.classifier}][r.strategy] = r.aua;
  }
  std::size_t wins = 0;
  std::string cells;
  for (const auto& [key, m] : aua) {
    const bool win = m.at("bmri") >= m.at("rs");
    wins += win;
    cells += " " + key.first + "/" + key.second + (win ? "+" : "-");
  }
  o.require(aua.size() == 6, "expected 6 problem-classifier cells, got " + std::to_string(aua.size()));
  o.require(wins >= 4, "bmri AUA >= rs AUA in only " + std::to_string(wins) + " of 6 cells");
  o.note("bmri AUA >= rs in " + std::to_string(wins) + "/6 cells:" + cells);

  try {
    std::ifstream in(out / "ranks.json");
    const auto j = nlohmann::json::parse(in);
    for (const char* k : {"strategies", "metrics", "r1", "r2", "r3", "r4", "r5"}) {
      o.require(j.contains(k), std::string("ranks.json lacks ") + k);
    }
    o.require(j["r1"].size() == 6, "r1 should have 6 entries");
    o.require(j["r2"].size() == 2, "r2 should have 2 entries");
    o.require(j["r3"].size() == 2, "r3 should have 2 entries");
    o.require(j["r5"]["pairings"] == 2, "r5 should count 2 pairings");
    std::vector<int> overall;
    for (const auto& [s, v] : j["r4"]["overall"].items()) overall.push_back(v.get<int>());
    std::sort(overall.begin(), overall.end());
    o.require(overall == std::vector<int>{1, 2, 3}, "r4 overall ranks are not a permutation");
    o.note("R4 overall " + j["r4"]["overall"].dump() + ", R5 total " + j["r5"]["total"].dump());
  } catch (const std::exception& e) {
    o.require(false, std::string("ranks.json: ") + e.what());
  }
  return o;
}

// --- 7 ---------------------------------------------------------------------
Outcome metric_suite() {
  Outcome o;
  o.require(std::abs(metric_aua(std::vector<double>{0.2, 0.2, 0.2}) - 0.8) < 1e-15, "AUA constant");
  o.require(metric_aua(std::vector<double>{0.5, 0.0}) == 0.75, "AUA (0.5, 1.0)");
  o.require(std::abs(metric_aua(std::vector<double>{0.35}) - 0.65) < 1e-15, "AUA single point");

  const std::vector<double> rs{0.5, 0.42, 0.37, 0.33, 0.31, 0.3};
  std::vector<double> better = rs;
  for (double& v : better) v -= 0.1;
  for (auto w : {WiWeighting::Linear, WiWeighting::Exponential}) {
    o.require(metric_wi(rs, rs, w) == 0.0, "WI equal curves");
    o.require(std::abs(metric_wi(better, rs, w) - 0.1) < 1e-12, "WI uniform 0.1 gain");
  }
  std::vector<double> rs_long(101, 0.3), early(101, 0.3);
  for (int i = 0; i < 10; ++i) early[i] = 0.2;
  o.require(metric_wi(early, rs_long, WiWeighting::Exponential) > metric_wi(early, rs_long, WiWeighting::Linear),
            "WI early gain ordering");

  o.require(metric_label_complexity(std::vector<double>(20, 0.2)) == 0, "label complexity constant");
  std::vector<double> flat_start{0.1, 0.1, 0.1, 0.1, 0.1};
  o.require(metric_label_complexity(flat_start) == 0, "label complexity at final loss");
  std::vector<double> dec;
  for (int i = 0; i <= 30; ++i) dec.push_back(i < 10 ? 0.3 - 0.02 * i : 0.1);
  o.require(metric_label_complexity(dec) == 13, "label complexity crossing step");

  const auto single = overall_rank({"a", "b", "c"}, {"aua"}, {{0.7, 0.9, 0.8}}, {Direction::HigherBetter});
  o.require(single.overall == std::vector<std::size_t>{3, 1, 2}, "single metric rank");
  const auto table = combine_ranks({"bmri", "qbcv"}, {"aua", "wi_linear", "wi_exponential", "label_complexity"},
                                   {{1, 2}, {1, 2}, {2, 1}, {1, 2}});
  o.require(table.overall[table.index_of("bmri")] == 1, "four-metric overall rank");
  const auto tie = combine_ranks({"spread", "steady"}, {"m1", "m2"}, {{1, 2}, {3, 2}});
  o.require(tie.overall[tie.index_of("steady")] == 1, "variance tie-break");
  if (o.pass) o.note("AUA, WI (linear, exponential), label complexity, overall rank and variance tie-break");
  return o;
}

// --- 8 ---------------------------------------------------------------------
int run_cli(const std::string& args) {
  const std::string cmd = std::string(MRI_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path dir = work_dir() / "determinism";
  fs::create_directories(dir);
  const fs::path cfg = dir / "config.yaml";
  std::ofstream(cfg) << "seed: 8080\n"
                        "replicates: 3\n"
                        "classifiers: [lda, knn:5]\n"
                        "strategies: [rs, se, qbcv, efelc, bmri]\n"
                        "n_b: 5\n"
                        "problems:\n"
                        "  - name: two-gaussian\n"
                        "    pool: 12\n"
                        "    test: 300\n"
                        "  - name: triangles\n"
                        "    pool: 12\n"
                        "    test: 300\n";
  std::vector<std::string> outputs;
  for (const char* j : {"1", "1", "4", "4"}) {
    const fs::path out = dir / ("run" + std::to_string(outputs.size()) + "_jobs" + j);
    const int code = run_cli("run --quiet --config " + cfg.string() + " --jobs " + j + " --out " + out.string());
    o.require(code == 0, "run exited with " + std::to_string(code));
    outputs.push_back(slurp(out / "metrics.csv"));
  }
  o.require(!outputs[0].empty(), "metrics.csv is empty");
  for (std::size_t i = 1; i < outputs.size(); ++i) {
    o.require(outputs[i] == outputs[0], "metrics.csv of run " + std::to_string(i) + " differs");
  }
  if (o.pass) o.note("metrics.csv byte-identical across 2 runs at --jobs 1 and 2 runs at --jobs 4");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"guarantee reproduction", guarantee_reproduction},
      {"analytic two-Gaussian example", analytic_example},
      {"oracle extremes on four-gaussian with 5-nn", oracle_extremes},
      {"unbiasedness of the product estimator", product_unbiasedness},
      {"EfeLc enumeration equivalence", efelc_equivalence},
      {"desk-scale ranking", desk_scale_ranking},
      {"metric unit suite", metric_suite},
      {"determinism of run", determinism},
  };
  const std::vector<double> budgets{10, 5, 300, 60, 60, 1800, 5, 600};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budgets[i]) o.require(false, "took " + fmt(secs, 4) + " s, budget " + fmt(budgets[i]) + " s");
    all = all && o.pass;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
              << fmt(secs, 3) << " s) " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
