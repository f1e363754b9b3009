#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mri {

/// Loss after each selection step. Entry i is the loss after i labels were
/// acquired from the pool (entry 0 is the initial classifier).
struct LearningCurve {
  std::string strategy;
  std::size_t replicate = 0;
  std::vector<std::size_t> labels;  // labelled-set size at each step
  std::vector<double> loss;

  std::size_t size() const { return loss.size(); }
  void validate() const;
};

enum class WiWeighting { Linear, Exponential };

inline constexpr double kWiAlpha = 0.02;
inline constexpr double kLabelComplexityEpsilon = 5.0;  // percent
inline constexpr std::size_t kSmoothingWindow = 5;

/// Area under the accuracy curve: mean over steps of (1 - loss).
double metric_aua(std::span<const double> loss);

/// Weighted mean of (loss_rs - loss_al) with weights exp(-alpha i) or (m-i)/m
/// over steps i = 0..m. With a single point both weightings reduce to the plain
/// difference.
double metric_wi(std::span<const double> loss, std::span<const double> rs_loss, WiWeighting weighting,
                 double alpha = kWiAlpha);

/// Trailing moving average; the first window-1 points average what is available.
std::vector<double> smooth_trailing(std::span<const double> loss, std::size_t window = kSmoothingWindow);

/// First step whose smoothed loss is within epsilon percent of the final
/// smoothed loss. The step index equals the labels acquired beyond the initial set.
std::size_t metric_label_complexity(std::span<const double> loss,
                                    double epsilon_percent = kLabelComplexityEpsilon,
                                    std::size_t window = kSmoothingWindow);

/// Element-wise mean of equally long curves.
std::vector<double> mean_curve(const std::vector<std::vector<double>>& curves);

}  // namespace mri
