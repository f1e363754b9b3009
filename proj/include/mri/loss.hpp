#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mri/classifiers.hpp"
#include "mri/dataset.hpp"

namespace mri {

enum class LossKind { ErrorRate, LogLoss };

std::string to_string(LossKind kind);
LossKind parse_loss_kind(std::string_view text);

struct LossEstimate {
  double value = 0.0;
  std::size_t n_eval = 0;
};

/// Mean per-example loss over a labelled evaluation set: the 0/1 allocation
/// error, or the negative log-likelihood -log p_y of the observed label.
LossEstimate empirical_loss(const TrainedModel& model, const Dataset& eval, LossKind kind);

/// Bayes posterior p(Y|x) for synthetic problems.
using Posterior = std::function<std::vector<double>(std::span<const double>)>;

/// Loss averaged over the true label distribution at each covariate row:
/// error rate 1 - p(allocated class | x), log loss -sum_j p_j log phat_j.
/// Labels in `eval` are ignored.
LossEstimate expected_loss(const TrainedModel& model, const Dataset& eval,
                           const Posterior& posterior, LossKind kind);

/// Least-confidence uncertainty 1 - max_j phat_j.
double least_confidence(std::span<const double> p);

/// Sum over the pool of 1 - phat(allocated class | x).
double pool_least_confidence_total(const TrainedModel& model, const Dataset& pool);

}  // namespace mri
