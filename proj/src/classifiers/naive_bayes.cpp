#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "mri/classifiers.hpp"

namespace mri::detail {
namespace {

constexpr double kVarianceFloor = 1e-9;

// Gaussian class-conditionals per covariate, covariates independent given the class.
class NaiveBayes final : public ModelImpl {
 public:
  explicit NaiveBayes(const Dataset& data) : d_(data.dim()) {
    const std::size_t k = data.classes();
    const auto counts = data.class_counts();
    log_prior_.assign(k, -std::numeric_limits<double>::infinity());
    mean_.assign(k * d_, 0.0);
    var_.assign(k * d_, kVarianceFloor);
    for (std::size_t i = 0; i < data.size(); ++i) {
      const std::size_t c = static_cast<std::size_t>(data.label(i) - 1);
      for (std::size_t a = 0; a < d_; ++a) mean_[c * d_ + a] += data.row(i)[a];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) continue;
      log_prior_[c] = std::log(double(counts[c]) / double(data.size()));
      for (std::size_t a = 0; a < d_; ++a) mean_[c * d_ + a] /= double(counts[c]);
    }
    std::vector<double> ss(k * d_, 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) {
      const std::size_t c = static_cast<std::size_t>(data.label(i) - 1);
      for (std::size_t a = 0; a < d_; ++a) {
        const double r = data.row(i)[a] - mean_[c * d_ + a];
        ss[c * d_ + a] += r * r;
      }
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] < 2) continue;
      for (std::size_t a = 0; a < d_; ++a) {
        var_[c * d_ + a] = std::max(kVarianceFloor, ss[c * d_ + a] / double(counts[c] - 1));
      }
    }
  }

  void predict_raw(std::span<const double> x, std::span<double> out) const override {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < out.size(); ++c) {
      if (!std::isfinite(log_prior_[c])) {
        out[c] = log_prior_[c];
        continue;
      }
      double v = log_prior_[c];
      for (std::size_t a = 0; a < d_; ++a) {
        const double var = var_[c * d_ + a];
        const double r = x[a] - mean_[c * d_ + a];
        v += -0.5 * (r * r / var + std::log(2.0 * std::numbers::pi * var));
      }
      out[c] = v;
      m = std::max(m, v);
    }
    double total = 0.0;
    for (double& v : out) {
      v = std::isfinite(v) ? std::exp(v - m) : 0.0;
      total += v;
    }
    for (double& v : out) v /= total;
  }

 private:
  std::size_t d_;
  std::vector<double> log_prior_;
  std::vector<double> mean_;
  std::vector<double> var_;
};

}  // namespace

std::shared_ptr<const ModelImpl> fit_naive_bayes(const Dataset& data) {
  return std::make_shared<NaiveBayes>(data);
}

}  // namespace mri::detail
