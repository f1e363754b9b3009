#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mri/classifiers.hpp"
#include "mri/dataset.hpp"
#include "mri/loss.hpp"
#include "mri/rng.hpp"

namespace mri {

/// Active learning selection methods. Every method produces one score per
/// candidate and the candidate with the largest score is selected.
enum class StrategyKind {
  Random,           // rs
  Entropy,          // se
  LeastConfidence,  // lc
  QbcVote,          // qbcv
  QbcAvgKl,         // qbca
  EfeLc,            // efelc
  SimpleMri,        // smri
  BootstrapMri,     // bmri
  OracleMax,        // oracle-max
  OracleMin,        // oracle-min
};

std::string to_string(StrategyKind kind);
StrategyKind parse_strategy(std::string_view name);
std::vector<StrategyKind> all_strategies();

using ScoreVector = std::vector<double>;

struct CommitteeSpec {
  std::vector<ClassifierSpec> members;

  /// Logistic regression, 5-nn, 21-nn and a random forest.
  static CommitteeSpec standard();
  void validate() const;
  bool operator==(const CommitteeSpec&) const = default;
};

enum class BootstrapAggregate { Median, Mean };

struct StrategyConfig {
  std::size_t subsample = 50;  // candidates scored per step (0 = whole pool)
  std::size_t n_b = 25;
  BootstrapAggregate aggregate = BootstrapAggregate::Median;
  CommitteeSpec committee = CommitteeSpec::standard();
  /// Classifier estimating p at the candidate for the MRI estimators; unset
  /// means default_probability_classifier(base).
  std::optional<ClassifierSpec> theta2;

  bool operator==(const StrategyConfig&) const = default;
};

/// Random forest when the base classifier is k-nn, 5-nn otherwise.
ClassifierSpec default_probability_classifier(const ClassifierSpec& base);

/// Read-only inputs to one selection step.
struct SelectionState {
  const ClassifierSpec& base_spec;
  const TrainedModel& base_model;  // trained on `labelled`
  const Dataset& labelled;         // D_S
  const Dataset& pool;             // X_P; its labels are never read here
  std::vector<std::size_t> candidates;  // distinct indices into `pool`
  std::uint64_t stream_seed = 0;        // derived from (master, replicate, strategy, step)
  std::uint64_t train_seed = 0;         // seed for every (re)training at this step
  LossKind loss = LossKind::ErrorRate;

  /// Independent sub-stream for one candidate (by pool index).
  std::uint64_t candidate_seed(std::size_t pool_index) const {
    return derive_seed(stream_seed, {0xca7dULL, pool_index});
  }
  std::span<const double> candidate_row(std::size_t position) const {
    return pool.row(candidates[position]);
  }
  void validate() const;
};

/// Truth available for synthetic problems: the Bayes posterior and a large
/// labelled sample for measuring loss.
struct OracleContext {
  Posterior posterior;
  const Dataset* big_test = nullptr;
};

// Building blocks, exposed for testing.
double shannon_entropy(std::span<const double> p);
/// Entropy of the vote fractions of committee allocations (labels 1..k).
double vote_entropy(std::span<const Label> votes, std::size_t classes);
/// Mean KL divergence of each member distribution from the member average.
double average_kl_to_mean(const std::vector<std::vector<double>>& members);

/// Losses of the base classifier retrained on D_T + (x, c_j), measured on
/// D_E, for every class j. Entry j-1 is class j.
std::vector<double> future_loss_vector(const ClassifierSpec& base, const Dataset& train_set,
                                       std::span<const double> x, const Dataset& eval_set,
                                       LossKind loss, std::uint64_t train_seed);

/// One bootstrapMRI replicate for candidate x with explicit resample indices
/// into D_S: returns phat . Lhat'.
double bootstrap_mri_replicate(std::span<const double> x, const ClassifierSpec& base,
                               const ClassifierSpec& theta2, const Dataset& labelled,
                               std::span<const std::size_t> i_p, std::span<const std::size_t> i_t,
                               std::span<const std::size_t> i_e, LossKind loss,
                               std::uint64_t train_seed);

double median(std::vector<double> v);

// Scoring functions; all return one score per candidate, larger preferred.
ScoreVector score_random(const SelectionState& state);
ScoreVector score_entropy(const SelectionState& state);
ScoreVector score_least_confidence(const SelectionState& state);
ScoreVector score_qbc_vote_entropy(const SelectionState& state, const CommitteeSpec& committee);
ScoreVector score_qbc_avg_kl(const SelectionState& state, const CommitteeSpec& committee);
/// Negated expected total pool least-confidence after retraining (EfeLc).
ScoreVector score_efelc(const SelectionState& state);
/// -phat . Lhat' with D_P = D_T = D_E = D_S.
ScoreVector score_simple_mri(const SelectionState& state, const ClassifierSpec& theta2);
/// -aggregate over n_b bootstrap replicates of phat . Lhat'.
ScoreVector score_bootstrap_mri(const SelectionState& state, const ClassifierSpec& theta2,
                                std::size_t n_b,
                                BootstrapAggregate aggregate = BootstrapAggregate::Median);

enum class OracleSign { Max, Min };
/// Exact-form expected loss reduction using the true posterior; negated for Min.
ScoreVector score_oracle_qc(const SelectionState& state, const OracleContext& oracle, OracleSign sign);

/// Expected loss reduction of labelling a whole batch, by enumeration of all
/// k^r joint labellings (at most 1024).
double batch_bc_exact(const Dataset& batch, const SelectionState& state, const OracleContext& oracle);

/// Dispatch by kind.
ScoreVector score_strategy(StrategyKind kind, const SelectionState& state,
                           const StrategyConfig& config, const OracleContext* oracle);

/// Position of the maximal score; exact ties are broken uniformly at random.
std::size_t select(std::span<const double> scores, Rng& rng);

}  // namespace mri
