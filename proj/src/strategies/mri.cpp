// Estimators of model retraining improvement. Term T_c (the current loss) does
// not depend on the candidate, so both estimators score a candidate by the
// negated estimate of the expected future loss phat . Lhat'.

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "mri/strategies.hpp"

namespace mri {

std::vector<double> future_loss_vector(const ClassifierSpec& base, const Dataset& train_set,
                                       std::span<const double> x, const Dataset& eval_set,
                                       LossKind loss, std::uint64_t train_seed) {
  std::vector<double> out(train_set.classes());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const TrainedModel m = train(base, train_set.with_example(x, static_cast<Label>(j + 1)), train_seed);
    out[j] = empirical_loss(m, eval_set, loss).value;
  }
  return out;
}

double median(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of an empty vector");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double upper = v[mid];
  const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

namespace {

double dot(std::span<const double> p, const std::vector<double>& l) {
  double t = 0.0;
  for (std::size_t j = 0; j < l.size(); ++j) t += p[j] * l[j];
  return t;
}

}  // namespace

ScoreVector score_simple_mri(const SelectionState& state, const ClassifierSpec& theta2) {
  state.validate();
  if (state.labelled.empty()) throw std::invalid_argument("simpleMRI needs labelled data");
  const Dataset& ds = state.labelled;
  const TrainedModel prob_model = train(theta2, ds, derive_seed(state.train_seed, {0x7e7a2ULL}));
  ScoreVector s;
  s.reserve(state.candidates.size());
  for (std::size_t i = 0; i < state.candidates.size(); ++i) {
    const auto x = state.candidate_row(i);
    const ProbVector p = prob_model.predict_proba(x);
    const auto l = future_loss_vector(state.base_spec, ds, x, ds, state.loss, state.train_seed);
    s.push_back(-dot(p.values(), l));
  }
  return s;
}

double bootstrap_mri_replicate(std::span<const double> x, const ClassifierSpec& base,
                               const ClassifierSpec& theta2, const Dataset& labelled,
                               std::span<const std::size_t> i_p, std::span<const std::size_t> i_t,
                               std::span<const std::size_t> i_e, LossKind loss,
                               std::uint64_t train_seed) {
  const Dataset d_p = labelled.subset(i_p);
  const Dataset d_t = labelled.subset(i_t);
  const Dataset d_e = labelled.subset(i_e);
  const TrainedModel prob_model = train(theta2, d_p, derive_seed(train_seed, {0x7e7a2ULL}));
  const ProbVector p = prob_model.predict_proba(x);
  return dot(p.values(), future_loss_vector(base, d_t, x, d_e, loss, train_seed));
}

ScoreVector score_bootstrap_mri(const SelectionState& state, const ClassifierSpec& theta2,
                                std::size_t n_b, BootstrapAggregate aggregate) {
  state.validate();
  if (n_b == 0) throw std::invalid_argument("bootstrapMRI needs n_b >= 1");
  if (state.labelled.empty()) throw std::invalid_argument("bootstrapMRI needs labelled data");
  const std::size_t n = state.labelled.size();
  ScoreVector s;
  s.reserve(state.candidates.size());
  std::vector<std::size_t> i_p(n), i_t(n), i_e(n);
  std::vector<double> q(n_b);
  for (std::size_t i = 0; i < state.candidates.size(); ++i) {
    const std::uint64_t seed = state.candidate_seed(state.candidates[i]);
    Rng rng = make_rng(seed);
    for (std::size_t b = 0; b < n_b; ++b) {
      for (auto* idx : {&i_p, &i_t, &i_e}) {
        for (auto& v : *idx) v = uniform_index(rng, n);
      }
      q[b] = bootstrap_mri_replicate(state.candidate_row(i), state.base_spec, theta2, state.labelled,
                                     i_p, i_t, i_e, state.loss, derive_seed(seed, {b}));
    }
    const double agg = aggregate == BootstrapAggregate::Median
                           ? median(q)
                           : std::accumulate(q.begin(), q.end(), 0.0) / double(n_b);
    s.push_back(-agg);
  }
  return s;
}

}  // namespace mri
