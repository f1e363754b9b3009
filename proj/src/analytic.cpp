#include "mri/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mri::analytic {

void MeanEstimates::validate() const {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("n must be even and at least 2");
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double class_cdf(int j, double x) {
  return normal_cdf(x - (j == 1 ? kTrueMean1 : kTrueMean2));
}

double bayes_posterior(int j, double x) {
  // log N(x; -1, 1) - log N(x; 1, 1) = -2x
  const double p1 = 1.0 / (1.0 + std::exp(2.0 * x));
  return j == 1 ? p1 : 1.0 - p1;
}

double marginal_density(double x) {
  return 0.5 * normal_pdf(x - kTrueMean1) + 0.5 * normal_pdf(x - kTrueMean2);
}

double exact_loss(const MeanEstimates& est) {
  const double t = est.boundary();
  const double f1 = class_cdf(1, t), f2 = class_cdf(2, t);
  const double swapped = est.mu1 > est.mu2 ? 1.0 : 0.0;
  return 0.5 * (1.0 - f1 + f2 + swapped * (2.0 * f1 - 2.0 * f2));
}

MeanEstimates retrain_update(const MeanEstimates& est, double x, int j) {
  est.validate();
  const double z = 2.0 / (est.n + 2.0);
  MeanEstimates out = est;
  double& mu = (j == 1) ? out.mu1 : out.mu2;
  mu = (1.0 - z) * mu + z * x;
  return out;
}

double exact_qc(const MeanEstimates& est, double x) {
  const double now = exact_loss(est);
  const double after = bayes_posterior(1, x) * exact_loss(retrain_update(est, x, 1)) +
                       bayes_posterior(2, x) * exact_loss(retrain_update(est, x, 2));
  return now - after;
}

double entropy_score(const MeanEstimates& est, double x) {
  // Unit-variance Gaussians with equal priors: logit of phat_1 is
  // (mu1 - mu2)(x - t).
  const double p1 = 1.0 / (1.0 + std::exp(-(est.mu1 - est.mu2) * (x - est.boundary())));
  double h = 0.0;
  for (double p : {p1, 1.0 - p1}) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double se_selection(const MeanEstimates& est) { return est.boundary(); }

double rs_expected_selection() { return 0.5 * kTrueMean1 + 0.5 * kTrueMean2; }

std::vector<double> Grid::points() const {
  if (!(step > 0.0) || hi < lo) throw std::invalid_argument("invalid grid");
  const auto count = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
  std::vector<double> xs(count);
  const double inv = std::round(1.0 / step);
  const bool decimal = inv >= 1.0 && std::abs(inv * step - 1.0) < 1e-12;
  const double first = std::round(lo * inv);
  for (std::size_t i = 0; i < count; ++i) {
    // Division by an integer reciprocal gives the correctly rounded 0.01 multiples.
    xs[i] = decimal && std::abs(first - lo * inv) < 1e-9 ? (first + double(i)) / inv : lo + double(i) * step;
  }
  return xs;
}

std::vector<GridRow> evaluate_grid(const MeanEstimates& est, const Grid& grid) {
  est.validate();
  std::vector<GridRow> rows;
  for (double x : grid.points()) {
    rows.push_back({x, exact_qc(est, x), entropy_score(est, x), marginal_density(x)});
  }
  return rows;
}

std::size_t grid_argmax(const std::vector<GridRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("empty grid");
  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].qc > rows[best].qc) best = i;
  }
  return best;
}

std::vector<NamedCase> standard_cases() {
  return {{"right-shift-0.5", {-0.5, 1.5, 18}},
          {"right-shift-0.1", {-0.9, 1.1, 18}},
          {"wide", {-1.1, 1.1, 18}},
          {"inverted", {1.0, -1.0, 18}}};
}

MeanEstimates parse_case(std::string_view name) {
  for (const auto& c : standard_cases()) {
    if (c.name == name) return c.est;
  }
  throw std::invalid_argument("unknown analytic case '" + std::string(name) +
                              "' (expected right-shift-0.5, right-shift-0.1, wide or inverted)");
}

}  // namespace mri::analytic
