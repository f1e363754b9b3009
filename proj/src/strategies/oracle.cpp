#include <cmath>
#include <stdexcept>

#include "mri/strategies.hpp"

namespace mri {

namespace {

void check_oracle(const OracleContext& oracle) {
  if (!oracle.posterior) throw std::invalid_argument("oracle scoring needs the true class posterior");
  if (oracle.big_test == nullptr || oracle.big_test->empty() || !oracle.big_test->labelled()) {
    throw std::invalid_argument("oracle scoring needs a labelled evaluation sample");
  }
}

}  // namespace

ScoreVector score_oracle_qc(const SelectionState& state, const OracleContext& oracle, OracleSign sign) {
  state.validate();
  check_oracle(oracle);
  const Dataset& big = *oracle.big_test;
  const double current = empirical_loss(state.base_model, big, state.loss).value;
  ScoreVector s;
  s.reserve(state.candidates.size());
  for (std::size_t i = 0; i < state.candidates.size(); ++i) {
    const auto x = state.candidate_row(i);
    const std::vector<double> p = oracle.posterior(x);
    const auto future = future_loss_vector(state.base_spec, state.labelled, x, big, state.loss, state.train_seed);
    double expected = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) expected += p[j] * future[j];
    const double q = current - expected;
    s.push_back(sign == OracleSign::Max ? q : -q);
  }
  return s;
}

double batch_bc_exact(const Dataset& batch, const SelectionState& state, const OracleContext& oracle) {
  check_oracle(oracle);
  const std::size_t k = state.labelled.classes(), r = batch.size();
  if (r == 0) throw std::invalid_argument("empty batch");
  if (std::pow(double(k), double(r)) > 1024.0) {
    throw std::invalid_argument("k^r = " + std::to_string(k) + "^" + std::to_string(r) +
                                " exceeds the enumeration bound of 1024");
  }
  const Dataset& big = *oracle.big_test;
  std::vector<std::vector<double>> p(r);
  for (std::size_t i = 0; i < r; ++i) p[i] = oracle.posterior(batch.row(i));

  const double current = empirical_loss(state.base_model, big, state.loss).value;
  std::size_t assignments = 1;
  for (std::size_t i = 0; i < r; ++i) assignments *= k;

  double expected = 0.0;
  std::vector<std::size_t> labels(r, 0);
  for (std::size_t a = 0; a < assignments; ++a) {
    std::size_t code = a;
    double weight = 1.0;
    Dataset augmented = state.labelled;
    for (std::size_t i = 0; i < r; ++i) {
      labels[i] = code % k;
      code /= k;
      weight *= p[i][labels[i]];
      augmented.append(batch.row(i), static_cast<Label>(labels[i] + 1));
    }
    const TrainedModel m = train(state.base_spec, augmented, state.train_seed);
    expected += weight * empirical_loss(m, big, state.loss).value;
  }
  return current - expected;
}

}  // namespace mri
