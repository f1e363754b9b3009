#include "mri/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "mri/rng.hpp"

namespace mri {

std::string ProblemRef::effective_group() const {
  if (!group.empty()) return group;
  return synthetic() ? kAbstractGroup : kRealGroup;
}

void ExperimentConfig::validate() const {
  if (problems.empty()) throw std::invalid_argument("at least one problem is required");
  if (classifiers.empty()) throw std::invalid_argument("at least one classifier is required");
  if (strategies.empty()) throw std::invalid_argument("at least one strategy is required");
  if (replicates == 0) throw std::invalid_argument("replicates must be >= 1");
  std::set<StrategyKind> seen;
  bool oracle = false;
  for (StrategyKind s : strategies) {
    if (!seen.insert(s).second) throw std::invalid_argument("strategy '" + to_string(s) + "' listed twice");
    oracle = oracle || s == StrategyKind::OracleMax || s == StrategyKind::OracleMin;
  }
  if (!seen.contains(StrategyKind::Random)) {
    throw std::invalid_argument("strategy list must include rs (the baseline for WI and rank counts)");
  }
  std::set<std::string> names;
  for (const auto& p : problems) {
    if (p.name.empty()) throw std::invalid_argument("problem name must not be empty");
    if (!names.insert(p.name).second) throw std::invalid_argument("problem '" + p.name + "' listed twice");
    if (p.pool == 0) throw std::invalid_argument("problem '" + p.name + "': pool must be >= 1");
    if (p.test && *p.test == 0) throw std::invalid_argument("problem '" + p.name + "': test must be >= 1");
    if (p.synthetic()) {
      make_problem(p.name);  // throws for unknown names
    } else if (oracle) {
      throw std::invalid_argument("oracle strategies need synthetic problems; '" + p.name + "' is CSV data");
    }
  }
  std::set<std::string> cls;
  for (const auto& c : classifiers) {
    c.validate();
    if (!cls.insert(c.name()).second) throw std::invalid_argument("classifier '" + c.name() + "' listed twice");
  }
  if (strategy.n_b == 0) throw std::invalid_argument("n_b must be >= 1");
  strategy.committee.validate();
  if (strategy.theta2) strategy.theta2->validate();
  if (oracle && oracle_test == 0) throw std::invalid_argument("oracle_test must be >= 1");
}

namespace {

std::size_t default_initial(std::size_t k) { return std::max<std::size_t>(k + 2, 4); }

std::uint64_t train_seed(const ExperimentConfig& config, const ProblemRef& problem,
                         const ClassifierSpec& classifier, std::size_t replicate, std::size_t step) {
  return derive_seed(config.seed, {key_of("train"), key_of(problem.name), key_of(classifier.name()),
                                   replicate, step});
}

}  // namespace

ReplicateData prepare_replicate(const ExperimentConfig& config, const ProblemRef& problem,
                                const Problem* generator, const Dataset* csv_data,
                                std::size_t replicate) {
  const std::uint64_t split_seed = derive_seed(config.seed, {key_of("split"), key_of(problem.name), replicate});
  ReplicateData out;
  if (problem.synthetic()) {
    if (generator == nullptr) throw std::invalid_argument("synthetic problem without generator");
    const std::size_t initial = problem.initial.value_or(default_initial(generator->classes));
    const std::size_t test = problem.test.value_or(1000);
    std::size_t n = initial + problem.pool + test;
    if (problem.name == kTwoGaussian && n % 2 == 1) ++n;  // that generator draws equal class halves
    const Dataset data =
        generator->sample(n, derive_seed(config.seed, {key_of("data"), key_of(problem.name), replicate}));
    out.split = make_split(data, initial, problem.pool, test, split_seed);
    const bool oracle = std::any_of(config.strategies.begin(), config.strategies.end(), [](StrategyKind s) {
      return s == StrategyKind::OracleMax || s == StrategyKind::OracleMin;
    });
    if (oracle) {
      std::size_t m = config.oracle_test;
      if (problem.name == kTwoGaussian && m % 2 == 1) ++m;
      out.oracle_test =
          generator->sample(m, derive_seed(config.seed, {key_of("oracle"), key_of(problem.name), replicate}));
    }
  } else {
    if (csv_data == nullptr) throw std::invalid_argument("CSV problem without data");
    const std::size_t n = csv_data->size();
    const std::size_t initial = problem.initial.value_or(default_initial(csv_data->classes()));
    const std::size_t test = problem.test.value_or(n * 3 / 10);
    out.split = make_split(*csv_data, initial, problem.pool, test, split_seed);
  }
  return out;
}

LearningCurve run_active_learning(const ExperimentConfig& config, const ProblemRef& problem,
                                  const ClassifierSpec& classifier, StrategyKind strategy,
                                  const ReplicateData& data, const Posterior& posterior,
                                  std::size_t replicate) {
  const std::uint64_t cell_seed = derive_seed(
      config.seed, {key_of("cell"), key_of(problem.name), key_of(classifier.name()), replicate,
                    key_of(to_string(strategy))});
  const Dataset& full_pool = data.split.pool;
  const Dataset& test = data.split.test;
  Dataset labelled = data.split.initial;
  std::vector<std::size_t> remaining(full_pool.size());
  std::iota(remaining.begin(), remaining.end(), 0);

  OracleContext oracle{posterior, data.oracle_test ? &*data.oracle_test : nullptr};
  const OracleContext* oracle_ptr = posterior ? &oracle : nullptr;

  LearningCurve curve;
  curve.strategy = to_string(strategy);
  curve.replicate = replicate;
  TrainedModel model = train(classifier, labelled, train_seed(config, problem, classifier, replicate, 0));
  curve.labels.push_back(labelled.size());
  curve.loss.push_back(empirical_loss(model, test, config.loss).value);

  for (std::size_t step = 1; !remaining.empty(); ++step) {
    const std::uint64_t step_seed = derive_seed(cell_seed, {step});
    const Dataset pool = full_pool.subset(remaining);

    std::vector<std::size_t> candidates(remaining.size());
    std::iota(candidates.begin(), candidates.end(), 0);
    const std::size_t limit = config.strategy.subsample;
    if (limit > 0 && candidates.size() > limit) {
      Rng rng = make_rng(derive_seed(step_seed, {0x5b5ULL}));
      for (std::size_t i = 0; i < limit; ++i) {
        std::swap(candidates[i], candidates[i + uniform_index(rng, candidates.size() - i)]);
      }
      candidates.resize(limit);
      std::sort(candidates.begin(), candidates.end());
    }

    SelectionState state{classifier, model, labelled, pool, std::move(candidates), step_seed,
                         train_seed(config, problem, classifier, replicate, step), config.loss};
    const ScoreVector scores = score_strategy(strategy, state, config.strategy, oracle_ptr);
    Rng pick_rng = make_rng(derive_seed(step_seed, {0x5e1ULL}));
    const std::size_t position = state.candidates[select(scores, pick_rng)];
    const std::size_t chosen = remaining[position];

    labelled.append(full_pool.row(chosen), full_pool.label(chosen));
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(position));
    model = train(classifier, labelled, train_seed(config, problem, classifier, replicate, step));
    curve.labels.push_back(labelled.size());
    curve.loss.push_back(empirical_loss(model, test, config.loss).value);
  }
  return curve;
}

ExperimentResult run_iterated_al(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  ExperimentResult result;
  result.config = config;

  std::vector<std::optional<Problem>> generators;
  std::vector<std::optional<Dataset>> csv;
  std::vector<std::vector<ReplicateData>> data(config.problems.size());
  for (std::size_t p = 0; p < config.problems.size(); ++p) {
    const ProblemRef& ref = config.problems[p];
    generators.emplace_back();
    csv.emplace_back();
    if (ref.synthetic()) {
      generators[p] = make_problem(ref.name);
    } else {
      csv[p] = load_csv(ref.csv, ref.label_column);
    }
    for (std::size_t r = 0; r < config.replicates; ++r) {
      data[p].push_back(prepare_replicate(config, ref, generators[p] ? &*generators[p] : nullptr,
                                          csv[p] ? &*csv[p] : nullptr, r));
    }
  }

  struct Task {
    std::size_t problem, classifier, replicate, strategy;
  };
  std::vector<Task> tasks;
  for (std::size_t p = 0; p < config.problems.size(); ++p) {
    for (std::size_t c = 0; c < config.classifiers.size(); ++c) {
      for (std::size_t r = 0; r < config.replicates; ++r) {
        for (std::size_t s = 0; s < config.strategies.size(); ++s) tasks.push_back({p, c, r, s});
      }
    }
  }
  result.cells.resize(tasks.size());

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      const ProblemRef& ref = config.problems[t.problem];
      const ClassifierSpec& cls = config.classifiers[t.classifier];
      const StrategyKind kind = config.strategies[t.strategy];
      CellResult& cell = result.cells[i];
      cell.problem = ref.name;
      cell.group = ref.effective_group();
      cell.classifier = cls.name();
      cell.strategy = to_string(kind);
      cell.replicate = t.replicate;
      try {
        const Posterior posterior =
            generators[t.problem] ? Posterior(generators[t.problem]->posterior) : Posterior{};
        cell.curve = run_active_learning(config, ref, cls, kind, data[t.problem][t.replicate], posterior,
                                         t.replicate);
      } catch (const std::exception& e) {
        cell.curve = {};
        cell.error = e.what();
      }
      const std::size_t finished = done.fetch_add(1) + 1;
      if (options.progress) {
        std::lock_guard lock(progress_mutex);
        options.progress("[" + std::to_string(finished) + "/" + std::to_string(tasks.size()) + "] " +
                         cell.problem + " " + cell.classifier + " " + cell.strategy + " replicate " +
                         std::to_string(cell.replicate) + (cell.ok() ? "" : " FAILED: " + cell.error));
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, tasks.size()));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return result;
}

std::string to_string(MetricScope scope) {
  switch (scope) {
    case MetricScope::MeanCurve: return "mean-curve";
    case MetricScope::Replicate: return "replicate";
    case MetricScope::ReplicateAverage: return "replicate-average";
  }
  return "?";
}

namespace {

MetricRow metric_row(const std::vector<double>& loss, const std::vector<double>& rs) {
  MetricRow row;
  row.aua = metric_aua(loss);
  row.wi_linear = metric_wi(loss, rs, WiWeighting::Linear);
  row.wi_exponential = metric_wi(loss, rs, WiWeighting::Exponential);
  row.label_complexity = double(metric_label_complexity(loss));
  return row;
}

}  // namespace

ExperimentSummary summarise(const ExperimentResult& result) {
  const ExperimentConfig& config = result.config;
  ExperimentSummary out;
  std::vector<std::string> strategies;
  for (StrategyKind s : config.strategies) strategies.push_back(to_string(s));
  const std::size_t rs_index = static_cast<std::size_t>(
      std::find(strategies.begin(), strategies.end(), to_string(StrategyKind::Random)) - strategies.begin());

  // (problem, classifier, replicate, strategy) -> cell
  std::map<std::tuple<std::string, std::string, std::size_t, std::string>, const CellResult*> index;
  for (const auto& cell : result.cells) {
    if (!cell.ok()) {
      out.diagnostics.push_back(cell.problem + " " + cell.classifier + " " + cell.strategy + " replicate " +
                                std::to_string(cell.replicate) + ": " + cell.error);
    }
    index[{cell.problem, cell.classifier, cell.replicate, cell.strategy}] = &cell;
  }

  std::vector<ProblemRanking> leaves;
  for (const auto& problem : config.problems) {
    for (const auto& classifier : config.classifiers) {
      const std::string cls = classifier.name();
      // Replicates where every strategy finished, so that curves stay paired.
      std::vector<std::size_t> usable;
      for (std::size_t r = 0; r < config.replicates; ++r) {
        bool all = true;
        for (const auto& s : strategies) {
          const auto it = index.find({problem.name, cls, r, s});
          all = all && it != index.end() && it->second->ok();
        }
        if (all) usable.push_back(r);
      }
      if (usable.empty()) {
        out.diagnostics.push_back(problem.name + " " + cls + ": no replicate completed for every strategy");
        continue;
      }
      const auto curve_of = [&](std::size_t r, const std::string& s) -> const std::vector<double>& {
        return index.at({problem.name, cls, r, s})->curve.loss;
      };

      std::vector<std::vector<double>> mean_curves;
      for (const auto& s : strategies) {
        std::vector<std::vector<double>> curves;
        for (std::size_t r : usable) curves.push_back(curve_of(r, s));
        mean_curves.push_back(mean_curve(curves));
      }

      std::vector<std::vector<double>> values(kMetricNames.size(), std::vector<double>(strategies.size()));
      for (std::size_t s = 0; s < strategies.size(); ++s) {
        MetricRow row = metric_row(mean_curves[s], mean_curves[rs_index]);
        row.problem = problem.name;
        row.group = problem.effective_group();
        row.classifier = cls;
        row.strategy = strategies[s];
        row.scope = MetricScope::MeanCurve;
        row.replicates = usable.size();
        values[0][s] = row.aua;
        values[1][s] = row.wi_linear;
        values[2][s] = row.wi_exponential;
        values[3][s] = row.label_complexity;
        out.metrics.push_back(row);
      }
      for (std::size_t s = 0; s < strategies.size(); ++s) {
        MetricRow avg;
        for (std::size_t r : usable) {
          MetricRow row = metric_row(curve_of(r, strategies[s]), curve_of(r, strategies[rs_index]));
          row.problem = problem.name;
          row.group = problem.effective_group();
          row.classifier = cls;
          row.strategy = strategies[s];
          row.scope = MetricScope::Replicate;
          row.replicate = r;
          row.replicates = 1;
          avg.aua += row.aua;
          avg.wi_linear += row.wi_linear;
          avg.wi_exponential += row.wi_exponential;
          avg.label_complexity += row.label_complexity;
          out.metrics.push_back(row);
        }
        const double n = double(usable.size());
        avg.aua /= n;
        avg.wi_linear /= n;
        avg.wi_exponential /= n;
        avg.label_complexity /= n;
        avg.problem = problem.name;
        avg.group = problem.effective_group();
        avg.classifier = cls;
        avg.strategy = strategies[s];
        avg.scope = MetricScope::ReplicateAverage;
        avg.replicates = usable.size();
        out.metrics.push_back(avg);
      }

      const std::vector<Direction> directions{Direction::HigherBetter, Direction::HigherBetter,
                                              Direction::HigherBetter, Direction::LowerBetter};
      leaves.push_back({problem.name, problem.effective_group(), cls,
                        overall_rank(strategies, kMetricNames, values, directions)});
    }
  }
  if (!leaves.empty()) out.ranking = aggregate_rankings(leaves, to_string(StrategyKind::Random));
  return out;
}

}  // namespace mri
