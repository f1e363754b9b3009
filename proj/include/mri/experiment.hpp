#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mri/classifiers.hpp"
#include "mri/dataset.hpp"
#include "mri/loss.hpp"
#include "mri/metrics.hpp"
#include "mri/ranking.hpp"
#include "mri/strategies.hpp"

namespace mri {

inline constexpr const char* kAbstractGroup = "abstract";
inline constexpr const char* kRealGroup = "real";

/// One classification problem of an experiment: a synthetic generator by name
/// or a CSV file.
struct ProblemRef {
  std::string name;
  std::string csv;                    // empty for synthetic problems
  std::string label_column = "class";
  std::string group;                  // empty: "abstract" for synthetic, "real" for CSV
  std::size_t pool = 60;
  std::optional<std::size_t> initial; // default max(k + 2, 4)
  std::optional<std::size_t> test;    // default 1000 synthetic, 30% of the rows for CSV

  bool synthetic() const { return csv.empty(); }
  std::string effective_group() const;
  bool operator==(const ProblemRef&) const = default;
};

struct ExperimentConfig {
  std::vector<ProblemRef> problems;
  std::vector<ClassifierSpec> classifiers;
  std::vector<StrategyKind> strategies;
  std::size_t replicates = 10;
  std::uint64_t seed = 1;
  LossKind loss = LossKind::ErrorRate;
  StrategyConfig strategy;
  std::size_t oracle_test = 2000;  // labelled sample used by oracle-max/min

  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

/// One (problem, classifier, strategy, replicate) run.
struct CellResult {
  std::string problem;
  std::string group;
  std::string classifier;
  std::string strategy;
  std::size_t replicate = 0;
  LearningCurve curve;
  std::string error;  // nonempty when the run failed; curve is then empty

  bool ok() const { return error.empty(); }
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<CellResult> cells;  // ordered by problem, classifier, replicate, strategy
};

struct RunOptions {
  std::size_t jobs = 1;
  std::function<void(const std::string&)> progress;  // called from worker threads, serialised
};

/// Prepared data for one replicate of one problem.
struct ReplicateData {
  Split split;
  std::optional<Dataset> oracle_test;
};

/// Draw (or cut) the data of one replicate. Deterministic in (config seed,
/// problem name, replicate).
ReplicateData prepare_replicate(const ExperimentConfig& config, const ProblemRef& problem,
                                const Problem* generator, const Dataset* csv_data,
                                std::size_t replicate);

/// Iterated active learning on one replicate until the pool is exhausted.
/// The curve has pool + 1 points.
LearningCurve run_active_learning(const ExperimentConfig& config, const ProblemRef& problem,
                                  const ClassifierSpec& classifier, StrategyKind strategy,
                                  const ReplicateData& data, const Posterior& posterior,
                                  std::size_t replicate);

ExperimentResult run_iterated_al(const ExperimentConfig& config, const RunOptions& options = {});

enum class MetricScope { MeanCurve, Replicate, ReplicateAverage };
std::string to_string(MetricScope scope);

struct MetricRow {
  std::string problem;
  std::string group;
  std::string classifier;
  std::string strategy;
  MetricScope scope = MetricScope::MeanCurve;
  std::size_t replicate = 0;  // meaningful for MetricScope::Replicate
  std::size_t replicates = 0; // curves behind the row
  double aua = 0.0;
  double wi_linear = 0.0;
  double wi_exponential = 0.0;
  double label_complexity = 0.0;
};

inline const std::vector<std::string> kMetricNames{"aua", "wi_linear", "wi_exponential", "label_complexity"};

struct ExperimentSummary {
  std::vector<MetricRow> metrics;
  std::optional<AggregateRanking> ranking;  // absent when no pairing had usable curves
  std::vector<std::string> diagnostics;
};

/// Metrics of replicate-averaged curves (the ranking basis), per-replicate
/// metrics and their averages, and the aggregated rankings.
ExperimentSummary summarise(const ExperimentResult& result);

}  // namespace mri
