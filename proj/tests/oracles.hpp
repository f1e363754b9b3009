#pragma once

// Direct enumerations used as test oracles. They rebuild every training set
// row by row and avoid the library's scoring helpers.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "mri/classifiers.hpp"
#include "mri/dataset.hpp"
#include "mri/loss.hpp"

namespace oracle {

inline mri::Dataset augmented(const mri::Dataset& base, std::span<const double> x, mri::Label y) {
  mri::Dataset d(base.dim(), base.classes());
  for (std::size_t i = 0; i < base.size(); ++i) d.append(base.row(i), base.label(i));
  d.append(x, y);
  return d;
}

inline double error_rate(const mri::TrainedModel& m, const mri::Dataset& eval) {
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < eval.size(); ++i) {
    const mri::ProbVector pv = m.predict_proba(eval.row(i));
    const auto p = pv.values();
    std::size_t best = 0;
    for (std::size_t j = 1; j < p.size(); ++j) {
      if (p[j] > p[best]) best = j;
    }
    wrong += static_cast<mri::Label>(best + 1) != eval.label(i);
  }
  return double(wrong) / double(eval.size());
}

/// f(x) = -sum_j phat_j(x) sum_{pool} (1 - max phat after retraining on D_S + (x, c_j)).
inline std::vector<double> efelc(const mri::ClassifierSpec& spec, const mri::Dataset& labelled,
                                 const mri::Dataset& pool, const std::vector<std::size_t>& candidates,
                                 std::uint64_t seed) {
  const mri::TrainedModel current = mri::train(spec, labelled, seed);
  std::vector<double> out;
  for (std::size_t c : candidates) {
    const auto x = pool.row(c);
    const auto p = current.predict_proba(x);
    double f = 0.0;
    for (std::size_t j = 0; j < labelled.classes(); ++j) {
      const mri::TrainedModel m = mri::train(spec, augmented(labelled, x, mri::Label(j + 1)), seed);
      double total = 0.0;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        const mri::ProbVector qv = m.predict_proba(pool.row(i));
        const auto q = qv.values();
        total += 1.0 - *std::max_element(q.begin(), q.end());
      }
      f -= p[j] * total;
    }
    out.push_back(f);
  }
  return out;
}

/// Expected error reduction from labelling x under the true posterior, with
/// error measured on `eval`.
inline double qc(const mri::ClassifierSpec& spec, const mri::Dataset& labelled, std::span<const double> x,
                 const std::vector<double>& posterior, const mri::Dataset& eval, std::uint64_t seed) {
  const double now = error_rate(mri::train(spec, labelled, seed), eval);
  double later = 0.0;
  for (std::size_t j = 0; j < posterior.size(); ++j) {
    later += posterior[j] * error_rate(mri::train(spec, augmented(labelled, x, mri::Label(j + 1)), seed), eval);
  }
  return now - later;
}

/// Batch target for exactly two candidates by nested loops over both labels.
inline double bc_pair(const mri::ClassifierSpec& spec, const mri::Dataset& labelled, std::span<const double> x1,
                      std::span<const double> x2, const std::vector<double>& p1, const std::vector<double>& p2,
                      const mri::Dataset& eval, std::uint64_t seed) {
  const double now = error_rate(mri::train(spec, labelled, seed), eval);
  double later = 0.0;
  for (std::size_t a = 0; a < p1.size(); ++a) {
    for (std::size_t b = 0; b < p2.size(); ++b) {
      const mri::Dataset d = augmented(augmented(labelled, x1, mri::Label(a + 1)), x2, mri::Label(b + 1));
      later += p1[a] * p2[b] * error_rate(mri::train(spec, d, seed), eval);
    }
  }
  return now - later;
}

}  // namespace oracle
