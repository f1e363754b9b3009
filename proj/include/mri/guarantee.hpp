#pragma once

#include <cstdint>
#include <vector>

// Two-candidate model of selection with a noisy but unbiased estimator of the
// retraining improvement. Two scale conventions appear below:
//   sigma: standard deviation of each estimate's noise M_i;
//   s:     standard deviation of the difference N = M_2 - M_1, s = sigma * sqrt(2).
namespace mri::guarantee {

/// beta = (1/2) erf(delta / (s sqrt 2)). Throws for nonpositive arguments.
double beta_closed_form(double delta, double s);
/// lambda = 1/2 + beta: probability that the better candidate is selected.
double lambda_closed_form(double delta, double s);
/// lambda expressed through the per-estimate noise sigma (s = sigma sqrt 2).
double lambda_from_sigma(double delta, double sigma);

struct NoisePair {
  double q1 = 1.0;
  double q2 = 0.0;
  double sigma = 1.0;  // per-estimate noise std

  double delta() const;
  double difference_sd() const;
  void validate() const;
};

struct SelectionFrequency {
  double lambda = 0.0;  // fraction of trials selecting the better candidate
  double se = 0.0;      // binomial standard error sqrt(l(1-l)/trials)
  std::size_t trials = 0;
};

/// Monte Carlo frequency with which argmax(Q_i + M_i) is the better candidate.
/// Trial t uses normals depending only on (seed, t).
SelectionFrequency simulate_selection(const NoisePair& pair, std::size_t trials, std::uint64_t seed);

struct ChebyshevCheck {
  double bound = 0.0;       // s^2 / delta^2
  double exact_tail = 0.0;  // P(N >= delta) for N ~ N(0, s^2)
  bool holds() const { return exact_tail <= bound; }
};
ChebyshevCheck chebyshev_bound_check(double delta, double s);

/// Synthetic estimators of the class probability vector p and the future loss
/// vector L' for the product T = p . L'. Each draw adds Gaussian noise to the
/// truth. With `coupling` = 0 the two noises are independent; otherwise the
/// loss noise for class j is coupling * (p noise for class j) plus its own
/// independent part, which biases the product.
struct ProductSetup {
  std::vector<double> p{0.3, 0.7};
  std::vector<double> loss{0.25, 0.1};
  double p_noise = 0.1;
  double loss_noise = 0.1;
  double coupling = 0.0;

  double truth() const;
  void validate() const;
};

struct ProductEstimate {
  double mean = 0.0;
  double se = 0.0;
  double truth = 0.0;
  std::size_t draws = 0;

  /// |mean - truth| <= z * se.
  bool within(double z) const;
};

ProductEstimate simulate_product(const ProductSetup& setup, std::size_t draws, std::uint64_t seed);

}  // namespace mri::guarantee
