#include "mri/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mri {

std::string to_string(LossKind kind) {
  return kind == LossKind::ErrorRate ? "error" : "logloss";
}

LossKind parse_loss_kind(std::string_view text) {
  if (text == "error" || text == "error-rate") return LossKind::ErrorRate;
  if (text == "logloss" || text == "log-loss") return LossKind::LogLoss;
  throw std::invalid_argument("unknown loss '" + std::string(text) + "'");
}

namespace {

// Scratch buffer sized for the model's class count.
struct ProbBuffer {
  explicit ProbBuffer(std::size_t k) : heap(k > 16 ? k : 0), view(k > 16 ? heap.data() : stack, k) {}
  double stack[16];
  std::vector<double> heap;
  std::span<double> view;
};

}  // namespace

LossEstimate empirical_loss(const TrainedModel& model, const Dataset& eval, LossKind kind) {
  if (eval.empty()) throw std::invalid_argument("evaluation set is empty");
  if (!eval.labelled()) throw std::invalid_argument("evaluation set must be labelled");
  ProbBuffer buf(model.classes());
  double total = 0.0;
  for (std::size_t i = 0; i < eval.size(); ++i) {
    model.predict_into(eval.row(i), buf.view);
    const Label y = eval.label(i);
    if (kind == LossKind::ErrorRate) {
      total += allocate(buf.view) != y ? 1.0 : 0.0;
    } else {
      total -= std::log(buf.view[static_cast<std::size_t>(y - 1)]);
    }
  }
  return {total / double(eval.size()), eval.size()};
}

LossEstimate expected_loss(const TrainedModel& model, const Dataset& eval,
                           const Posterior& posterior, LossKind kind) {
  if (eval.empty()) throw std::invalid_argument("evaluation set is empty");
  if (!posterior) throw std::invalid_argument("expected loss needs the true posterior");
  ProbBuffer buf(model.classes());
  double total = 0.0;
  for (std::size_t i = 0; i < eval.size(); ++i) {
    model.predict_into(eval.row(i), buf.view);
    const std::vector<double> p = posterior(eval.row(i));
    if (kind == LossKind::ErrorRate) {
      total += 1.0 - p[static_cast<std::size_t>(allocate(buf.view) - 1)];
    } else {
      for (std::size_t j = 0; j < p.size(); ++j) total -= p[j] * std::log(buf.view[j]);
    }
  }
  return {total / double(eval.size()), eval.size()};
}

double least_confidence(std::span<const double> p) {
  return 1.0 - *std::max_element(p.begin(), p.end());
}

double pool_least_confidence_total(const TrainedModel& model, const Dataset& pool) {
  if (pool.empty()) throw std::invalid_argument("pool is empty");
  ProbBuffer buf(model.classes());
  double total = 0.0;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    model.predict_into(pool.row(i), buf.view);
    total += least_confidence(buf.view);
  }
  return total;
}

}  // namespace mri
