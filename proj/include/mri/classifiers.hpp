#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mri/dataset.hpp"

namespace mri {

/// Lower bound applied to every predicted class probability before
/// renormalisation, keeping log losses finite.
inline constexpr double kProbFloor = 1e-9;

enum class ClassifierKind { LDA, QDA, KNN, NaiveBayes, LogisticRegression, RandomForest };

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::LDA;
  std::size_t neighbours = 5;  // KNN only
  std::size_t trees = 50;      // RandomForest only

  static ClassifierSpec lda() { return {ClassifierKind::LDA}; }
  static ClassifierSpec qda() { return {ClassifierKind::QDA}; }
  static ClassifierSpec knn(std::size_t k) { return {ClassifierKind::KNN, k}; }
  static ClassifierSpec naive_bayes() { return {ClassifierKind::NaiveBayes}; }
  static ClassifierSpec logistic() { return {ClassifierKind::LogisticRegression}; }
  static ClassifierSpec random_forest(std::size_t trees = 50) {
    return {ClassifierKind::RandomForest, 5, trees};
  }

  /// Canonical name: lda, qda, nb, logreg, knn:<k>, rf:<trees>.
  std::string name() const;
  void validate() const;

  friend bool operator==(const ClassifierSpec&, const ClassifierSpec&) = default;
};

/// Accepts the canonical names plus the aliases `5-nn`, `knn5`, `naive-bayes`,
/// `logistic`, `random-forest`. Throws std::invalid_argument otherwise.
ClassifierSpec parse_classifier(std::string_view text);

/// Length-k class probability vector; entries are floored at kProbFloor and
/// renormalised on construction.
class ProbVector {
 public:
  ProbVector() = default;
  explicit ProbVector(std::vector<double> p);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t j) const { return p_[j]; }
  /// Probability of class label c (1-based).
  double of(Label c) const { return p_[static_cast<std::size_t>(c - 1)]; }
  std::span<const double> values() const { return p_; }

 private:
  std::vector<double> p_;
};

/// Floor at kProbFloor and renormalise in place.
void floor_and_normalise(std::span<double> p);

/// Most probable class (1-based); ties go to the smallest class index.
Label allocate(std::span<const double> p);
inline Label allocate(const ProbVector& p) { return allocate(p.values()); }

namespace detail {
// Fitted state behind a TrainedModel. Implementations write raw (unfloored)
// probabilities for every class into `out`, absent classes as zero.
class ModelImpl {
 public:
  virtual ~ModelImpl() = default;
  virtual void predict_raw(std::span<const double> x, std::span<double> out) const = 0;
};
}  // namespace detail

/// A fitted classifier. Immutable, cheap to copy, safe to share between threads.
class TrainedModel {
 public:
  TrainedModel(ClassifierSpec spec, std::size_t dim, std::size_t classes,
               std::shared_ptr<const detail::ModelImpl> impl);

  const ClassifierSpec& spec() const { return spec_; }
  std::size_t dim() const { return dim_; }
  std::size_t classes() const { return classes_; }

  ProbVector predict_proba(std::span<const double> x) const;
  /// Allocation-free variant: `out` must have length classes().
  void predict_into(std::span<const double> x, std::span<double> out) const;
  Label allocate(std::span<const double> x) const;

 private:
  ClassifierSpec spec_;
  std::size_t dim_;
  std::size_t classes_;
  std::shared_ptr<const detail::ModelImpl> impl_;
};

/// Fit `spec` on labelled data. `seed` only matters for RandomForest.
TrainedModel train(const ClassifierSpec& spec, const Dataset& data, std::uint64_t seed = 0);

namespace detail {
std::shared_ptr<const ModelImpl> fit_lda(const Dataset& data);
std::shared_ptr<const ModelImpl> fit_qda(const Dataset& data);
std::shared_ptr<const ModelImpl> fit_knn(const Dataset& data, std::size_t k);
std::shared_ptr<const ModelImpl> fit_naive_bayes(const Dataset& data);
std::shared_ptr<const ModelImpl> fit_logistic(const Dataset& data);
std::shared_ptr<const ModelImpl> fit_random_forest(const Dataset& data, std::size_t trees,
                                                   std::uint64_t seed);

/// Bootstrap row indices used by tree `t` of a forest trained with `seed`.
std::vector<std::size_t> forest_bootstrap(std::size_t n, std::size_t t, std::uint64_t seed);
}  // namespace detail

}  // namespace mri
