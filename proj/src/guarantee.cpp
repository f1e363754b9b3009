#include "mri/guarantee.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mri/rng.hpp"

namespace mri::guarantee {

namespace {

void check_positive(double delta, double s) {
  if (!(delta > 0.0) || !(s > 0.0) || !std::isfinite(delta) || !std::isfinite(s)) {
    throw std::invalid_argument("delta and s must be positive and finite");
  }
}

}  // namespace

double beta_closed_form(double delta, double s) {
  check_positive(delta, s);
  return 0.5 * std::erf(delta / (s * std::numbers::sqrt2));
}

double lambda_closed_form(double delta, double s) { return 0.5 + beta_closed_form(delta, s); }

double lambda_from_sigma(double delta, double sigma) {
  return lambda_closed_form(delta, sigma * std::numbers::sqrt2);
}

double NoisePair::delta() const { return std::abs(q1 - q2); }

double NoisePair::difference_sd() const { return sigma * std::numbers::sqrt2; }

void NoisePair::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be positive");
  if (q1 == q2) throw std::invalid_argument("q1 and q2 must differ");
}

SelectionFrequency simulate_selection(const NoisePair& pair, std::size_t trials, std::uint64_t seed) {
  pair.validate();
  if (trials == 0) throw std::invalid_argument("trials must be >= 1");
  const bool first_better = pair.q1 > pair.q2;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto [m1, m2] = counter_normal_pair(seed, t);
    const double e1 = pair.q1 + pair.sigma * m1;
    const double e2 = pair.q2 + pair.sigma * m2;
    if ((e1 > e2) == first_better && e1 != e2) ++hits;
  }
  SelectionFrequency out;
  out.trials = trials;
  out.lambda = double(hits) / double(trials);
  out.se = std::sqrt(out.lambda * (1.0 - out.lambda) / double(trials));
  return out;
}

ChebyshevCheck chebyshev_bound_check(double delta, double s) {
  check_positive(delta, s);
  ChebyshevCheck c;
  c.bound = (s * s) / (delta * delta);
  c.exact_tail = 0.5 * std::erfc(delta / (s * std::numbers::sqrt2));
  if (!c.holds()) throw std::logic_error("Gaussian tail exceeds the Chebyshev bound");
  return c;
}

double ProductSetup::truth() const {
  double t = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) t += p[j] * loss[j];
  return t;
}

void ProductSetup::validate() const {
  if (p.empty() || p.size() != loss.size()) throw std::invalid_argument("p and loss must have equal nonzero length");
  if (p_noise < 0.0 || loss_noise < 0.0) throw std::invalid_argument("noise levels must be nonnegative");
}

bool ProductEstimate::within(double z) const { return std::abs(mean - truth) <= z * se; }

ProductEstimate simulate_product(const ProductSetup& setup, std::size_t draws, std::uint64_t seed) {
  setup.validate();
  if (draws < 2) throw std::invalid_argument("draws must be >= 2");
  const std::size_t k = setup.p.size();
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t d = 0; d < draws; ++d) {
    double t = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const auto [a, b] = counter_normal_pair(seed, d * k + j);
      const double ep = setup.p_noise * a;
      const double el = setup.loss_noise * b + setup.coupling * ep;
      t += (setup.p[j] + ep) * (setup.loss[j] + el);
    }
    sum += t;
    sum_sq += t * t;
  }
  ProductEstimate out;
  out.draws = draws;
  out.truth = setup.truth();
  out.mean = sum / double(draws);
  const double var = (sum_sq - double(draws) * out.mean * out.mean) / double(draws - 1);
  out.se = std::sqrt(std::max(var, 0.0) / double(draws));
  return out;
}

}  // namespace mri::guarantee
