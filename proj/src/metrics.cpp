#include "mri/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace mri {

void LearningCurve::validate() const {
  if (loss.empty()) throw std::invalid_argument("learning curve is empty");
  if (labels.size() != loss.size()) throw std::invalid_argument("learning curve labels and losses differ in length");
  for (std::size_t i = 1; i < labels.size(); ++i) {
    if (labels[i] <= labels[i - 1]) throw std::invalid_argument("learning curve labels must increase");
  }
}

double metric_aua(std::span<const double> loss) {
  if (loss.empty()) throw std::invalid_argument("AUA of an empty curve");
  double s = 0.0;
  for (double l : loss) s += 1.0 - l;
  return s / double(loss.size());
}

double metric_wi(std::span<const double> loss, std::span<const double> rs_loss, WiWeighting weighting,
                 double alpha) {
  if (loss.empty()) throw std::invalid_argument("WI of an empty curve");
  if (loss.size() != rs_loss.size()) throw std::invalid_argument("WI curves are misaligned");
  const std::size_t m = loss.size() - 1;
  if (m == 0) return rs_loss[0] - loss[0];
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i <= m; ++i) {
    const double w = weighting == WiWeighting::Exponential ? std::exp(-alpha * double(i))
                                                           : double(m - i) / double(m);
    num += w * (rs_loss[i] - loss[i]);
    den += w;
  }
  return num / den;
}

std::vector<double> smooth_trailing(std::span<const double> loss, std::size_t window) {
  if (window == 0) throw std::invalid_argument("smoothing window must be >= 1");
  std::vector<double> out(loss.size());
  for (std::size_t i = 0; i < loss.size(); ++i) {
    const std::size_t lo = i + 1 >= window ? i + 1 - window : 0;
    double s = 0.0;
    for (std::size_t j = lo; j <= i; ++j) s += loss[j];
    out[i] = s / double(i - lo + 1);
  }
  return out;
}

std::size_t metric_label_complexity(std::span<const double> loss, double epsilon_percent,
                                    std::size_t window) {
  if (loss.empty()) throw std::invalid_argument("label complexity of an empty curve");
  const auto smooth = smooth_trailing(loss, window);
  const double threshold = (1.0 + epsilon_percent / 100.0) * smooth.back();
  for (std::size_t i = 0; i < smooth.size(); ++i) {
    if (smooth[i] <= threshold) return i;
  }
  return smooth.size() - 1;
}

std::vector<double> mean_curve(const std::vector<std::vector<double>>& curves) {
  if (curves.empty()) throw std::invalid_argument("no curves to average");
  std::vector<double> out(curves.front().size(), 0.0);
  for (const auto& c : curves) {
    if (c.size() != out.size()) throw std::invalid_argument("curves differ in length");
    for (std::size_t i = 0; i < c.size(); ++i) out[i] += c[i];
  }
  for (double& v : out) v /= double(curves.size());
  return out;
}

}  // namespace mri
