#include <doctest.h>

#include "mri/config.hpp"

using namespace mri;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    parse_run_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return 999;
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("minimal document uses defaults") {
  const RunConfig c = parse_run_config(
      "classifiers: [lda]\n"
      "strategies: [rs, se]\n"
      "problems:\n"
      "  - name: two-gaussian\n");
  CHECK(c.experiment.replicates == 10);
  CHECK(c.experiment.strategy.n_b == 25);
  CHECK(c.experiment.strategy.subsample == 50);
  CHECK(c.experiment.problems[0].pool == 60);
  CHECK_FALSE(c.experiment.problems[0].initial);
  CHECK(c.jobs == 1);
  CHECK(c.out == "results");
}

TEST_CASE("printed configurations parse back to the same value") {
  RunConfig c = default_run_config();
  CHECK(parse_run_config(print_run_config(c)) == c);

  c.experiment.seed = 18446744073709551615ULL;
  c.experiment.loss = LossKind::LogLoss;
  c.experiment.strategy.aggregate = BootstrapAggregate::Mean;
  c.experiment.strategy.theta2 = ClassifierSpec::random_forest(10);
  c.experiment.strategy.committee.members = {ClassifierSpec::lda(), ClassifierSpec::knn(3)};
  c.experiment.classifiers = {ClassifierSpec::knn(5), ClassifierSpec::naive_bayes()};
  c.experiment.strategies = {StrategyKind::Random, StrategyKind::BootstrapMri, StrategyKind::EfeLc};
  ProblemRef csv;
  csv.name = "my data";
  csv.csv = "data/x: y.csv";
  csv.label_column = "target";
  csv.group = "small";
  csv.initial = 5;
  csv.test = 40;
  c.experiment.problems.push_back(csv);
  c.jobs = 4;
  c.out = "out dir";
  const std::string text = print_run_config(c);
  CAPTURE(text);
  CHECK(parse_run_config(text) == c);
}

TEST_CASE("errors carry the offending line") {
  CHECK(error_line("classifiers: [lda]\nstrategies: [rs]\nproblems:\n  - name: two-gaussian\nbogus: 1\n") == 5);
  CHECK(error_line("classifiers: [lda]\nstrategies: [rs, xx]\nproblems:\n  - name: two-gaussian\n") == 2);
  CHECK(error_line("classifiers: [lda]\nstrategies: [rs]\nproblems:\n  - name: two-gaussian\n    pool: -3\n") == 5);
  CHECK(error_line("classifiers: [lda]\nstrategies: [rs]\nproblems:\n  - name: nowhere\n") == 4);
  CHECK(error_line("classifiers: [lda\nstrategies: [rs]\n") > 0);
  CHECK(error_line("classifiers: [lda]\nproblems:\n  - name: two-gaussian\n") == 1);
  CHECK(error_line("seed: 1\nseed: 2\nclassifiers: [lda]\nstrategies: [rs]\nproblems:\n  - name: two-gaussian\n") == 2);
  CHECK_THROWS_AS(parse_run_config(""), ConfigError);
  CHECK_THROWS_AS(load_run_config("/no/such/file.yaml"), ConfigError);
}

TEST_CASE("invalid values are rejected") {
  CHECK_THROWS_AS(parse_run_config("classifiers: [lda]\nstrategies: [se]\nproblems:\n  - name: two-gaussian\n"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_run_config("classifiers: [lda]\nstrategies: [rs]\nreplicates: 0\nproblems:\n  - name: two-gaussian\n"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_run_config("classifiers: [lda]\nstrategies: [rs]\naggregate: mode\nproblems:\n  - name: two-gaussian\n"),
      ConfigError);
  CHECK_THROWS_AS(parse_run_config("classifiers: [svm]\nstrategies: [rs]\nproblems:\n  - name: two-gaussian\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config("classifiers: lda\nstrategies: [rs]\nproblems:\n  - name: two-gaussian\n"),
                  ConfigError);
}

}
