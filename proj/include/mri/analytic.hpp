#pragma once

#include <string>
#include <string_view>
#include <vector>

// Closed-form model retraining improvement for the univariate balanced
// two-Gaussian problem: class 1 ~ N(-1, 1), class 2 ~ N(1, 1), prior (1/2, 1/2).
// The classifier estimates only the two class means; its boundary is their
// midpoint.
namespace mri::analytic {

inline constexpr double kTrueMean1 = -1.0;
inline constexpr double kTrueMean2 = 1.0;
inline constexpr double kTrueBoundary = 0.0;

struct MeanEstimates {
  double mu1 = kTrueMean1;
  double mu2 = kTrueMean2;
  int n = 18;  // labelled examples behind the estimates (even, >= 2)

  double boundary() const { return 0.5 * (mu1 + mu2); }
  void validate() const;
};

double normal_cdf(double x);
double normal_pdf(double x);

/// Class-conditional cdfs F_1, F_2.
double class_cdf(int j, double x);
/// Bayes posterior p_j(x), j in {1, 2}.
double bayes_posterior(int j, double x);
/// Marginal density p(x) of the balanced mixture.
double marginal_density(double x);

/// Exact error rate of the mean-estimate classifier.
double exact_loss(const MeanEstimates& est);

/// Estimates after adding one example (x, class j): mu_j' = (1-z) mu_j + z x
/// with z = 2 / (n + 2). n is left unchanged.
MeanEstimates retrain_update(const MeanEstimates& est, double x, int j);

/// Expected loss reduction from labelling x, using the Bayes posterior.
double exact_qc(const MeanEstimates& est, double x);

/// Shannon entropy of the classifier's own posterior at x (the SE score).
double entropy_score(const MeanEstimates& est, double x);

/// Shannon entropy sampling always picks the estimated boundary.
double se_selection(const MeanEstimates& est);
/// Random selection picks x ~ p(x), whose mean is 0.
double rs_expected_selection();

struct Grid {
  double lo = -5.0;
  double hi = 5.0;
  double step = 0.01;

  std::vector<double> points() const;
};

struct GridRow {
  double x;
  double qc;
  double se_score;
  double rs_density;
};

std::vector<GridRow> evaluate_grid(const MeanEstimates& est, const Grid& grid = {});

/// Index of the maximal Q^c row (first on ties).
std::size_t grid_argmax(const std::vector<GridRow>& rows);

/// The four illustrative parameter settings with n = 18.
struct NamedCase {
  std::string name;
  MeanEstimates est;
};
std::vector<NamedCase> standard_cases();
MeanEstimates parse_case(std::string_view name);

}  // namespace mri::analytic
