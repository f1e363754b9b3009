#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mri/classifiers.hpp"

namespace mri::detail {
namespace {

constexpr double kPenalty = 1e-4;
constexpr double kGradTol = 1e-6;
constexpr int kMaxIter = 500;

// Multinomial logistic regression over the classes present in the training
// data, fitted on standardised covariates by gradient descent with Armijo
// backtracking. Intercepts are not penalised.
class Logistic final : public ModelImpl {
 public:
  explicit Logistic(const Dataset& data) : d_(data.dim()), k_(data.classes()) {
    const auto counts = data.class_counts();
    for (std::size_t c = 0; c < k_; ++c) {
      if (counts[c] > 0) classes_.push_back(c);
    }
    standardise(data);
    if (classes_.size() > 1) fit(data);
  }

  void predict_raw(std::span<const double> x, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    if (classes_.size() == 1) {
      out[classes_[0]] = 1.0;
      return;
    }
    const std::size_t w = d_ + 1;
    double m = -std::numeric_limits<double>::infinity();
    double z_buf[64];
    std::vector<double> z_heap;
    double* z = z_buf;
    if (classes_.size() > 64) {
      z_heap.resize(classes_.size());
      z = z_heap.data();
    }
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      double v = weights_[c * w + d_];
      for (std::size_t a = 0; a < d_; ++a) v += weights_[c * w + a] * (x[a] - shift_[a]) * inv_scale_[a];
      z[c] = v;
      m = std::max(m, v);
    }
    double total = 0.0;
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      z[c] = std::exp(z[c] - m);
      total += z[c];
    }
    for (std::size_t c = 0; c < classes_.size(); ++c) out[classes_[c]] = z[c] / total;
  }

 private:
  void standardise(const Dataset& data) {
    const std::size_t n = data.size();
    shift_.assign(d_, 0.0);
    inv_scale_.assign(d_, 1.0);
    for (std::size_t a = 0; a < d_; ++a) {
      double mean = 0.0;
      for (std::size_t i = 0; i < n; ++i) mean += data.row(i)[a];
      mean /= double(n);
      double ss = 0.0;
      for (std::size_t i = 0; i < n; ++i) ss += (data.row(i)[a] - mean) * (data.row(i)[a] - mean);
      shift_[a] = mean;
      const double sd = n > 1 ? std::sqrt(ss / double(n - 1)) : 0.0;
      if (sd > 0.0 && std::isfinite(sd)) inv_scale_[a] = 1.0 / sd;
    }
  }

  // Objective value; fills `grad` when non-null.
  double objective(const std::vector<double>& z_data, const std::vector<std::size_t>& y,
                   const std::vector<double>& w, std::vector<double>* grad) const {
    const std::size_t n = y.size(), c_count = classes_.size(), width = d_ + 1;
    if (grad) std::fill(grad->begin(), grad->end(), 0.0);
    std::vector<double> logits(c_count);
    double nll = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double* xi = &z_data[i * width];
      double m = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < c_count; ++c) {
        double v = 0.0;
        for (std::size_t a = 0; a < width; ++a) v += w[c * width + a] * xi[a];
        logits[c] = v;
        m = std::max(m, v);
      }
      double total = 0.0;
      for (std::size_t c = 0; c < c_count; ++c) total += std::exp(logits[c] - m);
      const double log_norm = m + std::log(total);
      nll -= logits[y[i]] - log_norm;
      if (grad) {
        for (std::size_t c = 0; c < c_count; ++c) {
          const double r = std::exp(logits[c] - log_norm) - (c == y[i] ? 1.0 : 0.0);
          for (std::size_t a = 0; a < width; ++a) (*grad)[c * width + a] += r * xi[a];
        }
      }
    }
    double f = nll / double(n), pen = 0.0;
    for (std::size_t c = 0; c < c_count; ++c) {
      for (std::size_t a = 0; a < d_; ++a) pen += w[c * width + a] * w[c * width + a];
    }
    f += 0.5 * kPenalty * pen;
    if (grad) {
      for (auto& g : *grad) g /= double(n);
      for (std::size_t c = 0; c < c_count; ++c) {
        for (std::size_t a = 0; a < d_; ++a) (*grad)[c * width + a] += kPenalty * w[c * width + a];
      }
    }
    return f;
  }

  void fit(const Dataset& data) {
    const std::size_t n = data.size(), width = d_ + 1;
    std::vector<std::size_t> slot(k_, 0);
    for (std::size_t c = 0; c < classes_.size(); ++c) slot[classes_[c]] = c;
    std::vector<double> z(n * width);
    std::vector<std::size_t> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t a = 0; a < d_; ++a) z[i * width + a] = (data.row(i)[a] - shift_[a]) * inv_scale_[a];
      z[i * width + d_] = 1.0;
      y[i] = slot[static_cast<std::size_t>(data.label(i) - 1)];
    }

    weights_.assign(classes_.size() * width, 0.0);
    std::vector<double> grad(weights_.size()), trial(weights_.size());
    double f = objective(z, y, weights_, &grad);
    double step = 1.0;
    for (int iter = 0; iter < kMaxIter; ++iter) {
      double g2 = 0.0;
      for (double g : grad) g2 += g * g;
      if (std::sqrt(g2) < kGradTol) break;
      step = std::min(step * 2.0, 1e6);
      double f_trial = f;
      bool accepted = false;
      for (int halving = 0; halving < 60; ++halving) {
        for (std::size_t j = 0; j < weights_.size(); ++j) trial[j] = weights_[j] - step * grad[j];
        f_trial = objective(z, y, trial, nullptr);
        if (f_trial <= f - 0.5 * step * g2) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
      weights_.swap(trial);
      f = objective(z, y, weights_, &grad);
    }
  }

  std::size_t d_;
  std::size_t k_;
  std::vector<std::size_t> classes_;
  std::vector<double> shift_;
  std::vector<double> inv_scale_;
  std::vector<double> weights_;  // classes_.size() x (d + 1), intercept last
};

}  // namespace

std::shared_ptr<const ModelImpl> fit_logistic(const Dataset& data) {
  return std::make_shared<Logistic>(data);
}

}  // namespace mri::detail
