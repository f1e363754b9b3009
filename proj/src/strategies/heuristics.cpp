#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mri/strategies.hpp"

namespace mri {

namespace {

struct NamedStrategy {
  StrategyKind kind;
  const char* name;
};

constexpr NamedStrategy kNames[] = {
    {StrategyKind::Random, "rs"},         {StrategyKind::Entropy, "se"},
    {StrategyKind::LeastConfidence, "lc"}, {StrategyKind::QbcVote, "qbcv"},
    {StrategyKind::QbcAvgKl, "qbca"},      {StrategyKind::EfeLc, "efelc"},
    {StrategyKind::SimpleMri, "smri"},     {StrategyKind::BootstrapMri, "bmri"},
    {StrategyKind::OracleMax, "oracle-max"}, {StrategyKind::OracleMin, "oracle-min"},
};

std::vector<TrainedModel> train_committee(const SelectionState& state, const CommitteeSpec& committee) {
  committee.validate();
  std::vector<TrainedModel> models;
  models.reserve(committee.members.size());
  for (std::size_t m = 0; m < committee.members.size(); ++m) {
    models.push_back(train(committee.members[m], state.labelled, derive_seed(state.train_seed, {0xc0ULL, m})));
  }
  return models;
}

}  // namespace

std::string to_string(StrategyKind kind) {
  for (const auto& n : kNames) {
    if (n.kind == kind) return n.name;
  }
  return "?";
}

StrategyKind parse_strategy(std::string_view name) {
  for (const auto& n : kNames) {
    if (name == n.name) return n.kind;
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

std::vector<StrategyKind> all_strategies() {
  std::vector<StrategyKind> out;
  for (const auto& n : kNames) out.push_back(n.kind);
  return out;
}

CommitteeSpec CommitteeSpec::standard() {
  return {{ClassifierSpec::logistic(), ClassifierSpec::knn(5), ClassifierSpec::knn(21),
           ClassifierSpec::random_forest(50)}};
}

void CommitteeSpec::validate() const {
  if (members.size() < 2) throw std::invalid_argument("a committee needs at least two members");
  for (const auto& m : members) m.validate();
}

ClassifierSpec default_probability_classifier(const ClassifierSpec& base) {
  return base.kind == ClassifierKind::KNN ? ClassifierSpec::random_forest(50) : ClassifierSpec::knn(5);
}

void SelectionState::validate() const {
  if (candidates.empty()) throw std::invalid_argument("no candidates to score");
  std::vector<std::size_t> sorted = candidates;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("candidate indices must be distinct");
  }
  if (sorted.back() >= pool.size()) throw std::invalid_argument("candidate index outside the pool");
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double vote_entropy(std::span<const Label> votes, std::size_t classes) {
  std::vector<double> frac(classes, 0.0);
  for (Label v : votes) frac[static_cast<std::size_t>(v - 1)] += 1.0;
  for (double& f : frac) f /= double(votes.size());
  return shannon_entropy(frac);
}

double average_kl_to_mean(const std::vector<std::vector<double>>& members) {
  const std::size_t k = members.front().size();
  std::vector<double> mean(k, 0.0);
  for (const auto& p : members) {
    for (std::size_t j = 0; j < k; ++j) mean[j] += p[j] / double(members.size());
  }
  double total = 0.0;
  for (const auto& p : members) {
    for (std::size_t j = 0; j < k; ++j) {
      if (p[j] > 0.0) total += p[j] * std::log(p[j] / mean[j]);
    }
  }
  return std::max(0.0, total / double(members.size()));
}

ScoreVector score_random(const SelectionState& state) {
  state.validate();
  ScoreVector s;
  s.reserve(state.candidates.size());
  for (std::size_t c : state.candidates) s.push_back(counter_uniform(state.stream_seed, c));
  return s;
}

ScoreVector score_entropy(const SelectionState& state) {
  state.validate();
  ScoreVector s;
  for (std::size_t i = 0; i < state.candidates.size(); ++i) {
    s.push_back(shannon_entropy(state.base_model.predict_proba(state.candidate_row(i)).values()));
  }
  return s;
}

ScoreVector score_least_confidence(const SelectionState& state) {
  state.validate();
  ScoreVector s;
  for (std::size_t i = 0; i < state.candidates.size(); ++i) {
    s.push_back(least_confidence(state.base_model.predict_proba(state.candidate_row(i)).values()));
  }
  return s;
}

ScoreVector score_qbc_vote_entropy(const SelectionState& state, const CommitteeSpec& committee) {
  state.validate();
  const auto models = train_committee(state, committee);
  ScoreVector s;
  std::vector<Label> votes(models.size());
  for (std::size_t i = 0; i < state.candidates.size(); ++i) {
    for (std::size_t m = 0; m < models.size(); ++m) votes[m] = models[m].allocate(state.candidate_row(i));
    s.push_back(vote_entropy(votes, state.labelled.classes()));
  }
  return s;
}

ScoreVector score_qbc_avg_kl(const SelectionState& state, const CommitteeSpec& committee) {
  state.validate();
  const auto models = train_committee(state, committee);
  ScoreVector s;
  std::vector<std::vector<double>> probs(models.size());
  for (std::size_t i = 0; i < state.candidates.size(); ++i) {
    for (std::size_t m = 0; m < models.size(); ++m) {
      const ProbVector p = models[m].predict_proba(state.candidate_row(i));
      probs[m].assign(p.values().begin(), p.values().end());
    }
    s.push_back(average_kl_to_mean(probs));
  }
  return s;
}

ScoreVector score_efelc(const SelectionState& state) {
  state.validate();
  ScoreVector s;
  const std::size_t k = state.labelled.classes();
  for (std::size_t i = 0; i < state.candidates.size(); ++i) {
    const auto x = state.candidate_row(i);
    const ProbVector p = state.base_model.predict_proba(x);
    double f = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const TrainedModel retrained =
          train(state.base_spec, state.labelled.with_example(x, static_cast<Label>(j + 1)), state.train_seed);
      f -= p[j] * pool_least_confidence_total(retrained, state.pool);
    }
    s.push_back(f);
  }
  return s;
}

ScoreVector score_strategy(StrategyKind kind, const SelectionState& state,
                           const StrategyConfig& config, const OracleContext* oracle) {
  const ClassifierSpec theta2 = config.theta2.value_or(default_probability_classifier(state.base_spec));
  switch (kind) {
    case StrategyKind::Random: return score_random(state);
    case StrategyKind::Entropy: return score_entropy(state);
    case StrategyKind::LeastConfidence: return score_least_confidence(state);
    case StrategyKind::QbcVote: return score_qbc_vote_entropy(state, config.committee);
    case StrategyKind::QbcAvgKl: return score_qbc_avg_kl(state, config.committee);
    case StrategyKind::EfeLc: return score_efelc(state);
    case StrategyKind::SimpleMri: return score_simple_mri(state, theta2);
    case StrategyKind::BootstrapMri: return score_bootstrap_mri(state, theta2, config.n_b, config.aggregate);
    case StrategyKind::OracleMax:
    case StrategyKind::OracleMin:
      if (oracle == nullptr) throw std::invalid_argument(to_string(kind) + " needs a synthetic problem");
      return score_oracle_qc(state, *oracle,
                             kind == StrategyKind::OracleMax ? OracleSign::Max : OracleSign::Min);
  }
  throw std::invalid_argument("unhandled strategy");
}

}  // namespace mri
