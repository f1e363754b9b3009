#include <doctest.h>

#include "mri/experiment.hpp"
#include "mri/report.hpp"
#include "temp_dir.hpp"

using namespace mri;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  ProblemRef p;
  p.name = kTwoGaussian;
  p.pool = 9;
  p.test = 201;
  c.problems = {p};
  c.classifiers = {ClassifierSpec::lda()};
  c.strategies = {StrategyKind::Random, StrategyKind::Entropy, StrategyKind::SimpleMri};
  c.replicates = 2;
  c.seed = 5;
  return c;
}

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("curves have pool + 1 points and grow by one label per step") {
  const auto result = run_iterated_al(small_config());
  REQUIRE(result.cells.size() == 6);
  for (const auto& cell : result.cells) {
    REQUIRE(cell.ok());
    CHECK(cell.curve.size() == 10);
    CHECK_NOTHROW(cell.curve.validate());
    CHECK(cell.curve.labels.front() == 4);  // max(k + 2, 4)
    CHECK(cell.curve.labels.back() == 13);
    for (double l : cell.curve.loss) {
      CHECK(l >= 0.0);
      CHECK(l <= 1.0);
    }
  }
  // All strategies of a replicate start from the same classifier.
  CHECK(result.cells[0].curve.loss[0] == result.cells[1].curve.loss[0]);
}

TEST_CASE("results do not depend on the number of workers") {
  const auto a = run_iterated_al(small_config(), {1, {}});
  const auto b = run_iterated_al(small_config(), {3, {}});
  CHECK(curves_csv(a) == curves_csv(b));
  CHECK(metrics_csv(summarise(a)) == metrics_csv(summarise(b)));
  auto other = small_config();
  other.seed = 6;
  CHECK(curves_csv(run_iterated_al(other)) != curves_csv(a));
}

TEST_CASE("summary metrics and rankings") {
  const auto s = summarise(run_iterated_al(small_config()));
  CHECK(s.diagnostics.empty());
  REQUIRE(s.ranking);
  std::size_t mean_rows = 0, rep_rows = 0, avg_rows = 0;
  for (const auto& r : s.metrics) {
    if (r.strategy == "rs") {
      CHECK(r.wi_linear == 0.0);
      CHECK(r.wi_exponential == 0.0);
    }
    mean_rows += r.scope == MetricScope::MeanCurve;
    rep_rows += r.scope == MetricScope::Replicate;
    avg_rows += r.scope == MetricScope::ReplicateAverage;
  }
  CHECK(mean_rows == 3);
  CHECK(rep_rows == 6);
  CHECK(avg_rows == 3);
  CHECK(s.ranking->r1.size() == 1);
  CHECK(s.ranking->r1[0].group == kAbstractGroup);
  CHECK(s.ranking->r5.pairings == 1);
}

TEST_CASE("failed runs are reported and left out") {
  auto result = run_iterated_al(small_config());
  result.cells[4].curve = {};
  result.cells[4].error = "boom";
  const auto s = summarise(result);
  REQUIRE(s.diagnostics.size() == 1);
  CHECK(s.diagnostics[0].find("boom") != std::string::npos);
  for (const auto& r : s.metrics) {
    if (r.scope != MetricScope::Replicate) CHECK(r.replicates == 1);
  }
}

TEST_CASE("CSV problems use the loaded rows") {
  TempDir dir;
  const Dataset d = generate_abstract_problem(kFourGaussian, 120, 3);
  const auto path = (dir.path() / "fg.csv").string();
  write_csv(d, path);
  ExperimentConfig c = small_config();
  ProblemRef p;
  p.name = "fg";
  p.csv = path;
  p.pool = 20;
  c.problems = {p};
  c.strategies = {StrategyKind::Random, StrategyKind::LeastConfidence};
  const auto result = run_iterated_al(c);
  for (const auto& cell : result.cells) {
    REQUIRE(cell.ok());
    CHECK(cell.group == kRealGroup);
    CHECK(cell.curve.size() == 21);
  }
  const ReplicateData rep = prepare_replicate(c, c.problems[0], nullptr, &d, 0);
  CHECK(rep.split.test.size() == 36);  // 30% of 120
}

TEST_CASE("oracle strategies get a labelled evaluation sample") {
  ExperimentConfig c = small_config();
  c.strategies = {StrategyKind::Random, StrategyKind::OracleMax};
  c.oracle_test = 301;  // odd sizes are rounded up for the two-gaussian generator
  c.problems[0].pool = 5;
  const auto result = run_iterated_al(c);
  for (const auto& cell : result.cells) CHECK(cell.ok());
  const Problem gen = make_problem(kTwoGaussian);
  const ReplicateData rep = prepare_replicate(c, c.problems[0], &gen, nullptr, 0);
  REQUIRE(rep.oracle_test);
  CHECK(rep.oracle_test->size() == 302);
}

TEST_CASE("configuration validation") {
  auto c = small_config();
  CHECK_NOTHROW(c.validate());
  c.strategies = {StrategyKind::Entropy};
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("rs"), std::invalid_argument);
  c = small_config();
  c.strategies.push_back(StrategyKind::Entropy);
  CHECK_THROWS(c.validate());
  c = small_config();
  c.replicates = 0;
  CHECK_THROWS(c.validate());
  c = small_config();
  c.problems[0].csv = "x.csv";
  c.strategies.push_back(StrategyKind::OracleMin);
  CHECK_THROWS(c.validate());
  c = small_config();
  c.problems[0].name = "unknown";
  CHECK_THROWS(c.validate());
}

}
