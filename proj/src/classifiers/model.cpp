#include <charconv>
#include <stdexcept>
#include <string>

#include "mri/classifiers.hpp"

namespace mri {

std::string ClassifierSpec::name() const {
  switch (kind) {
    case ClassifierKind::LDA: return "lda";
    case ClassifierKind::QDA: return "qda";
    case ClassifierKind::KNN: return "knn:" + std::to_string(neighbours);
    case ClassifierKind::NaiveBayes: return "nb";
    case ClassifierKind::LogisticRegression: return "logreg";
    case ClassifierKind::RandomForest: return "rf:" + std::to_string(trees);
  }
  return "?";
}

void ClassifierSpec::validate() const {
  if (kind == ClassifierKind::KNN && neighbours < 1) throw std::invalid_argument("knn needs k >= 1");
  if (kind == ClassifierKind::RandomForest && trees < 1) {
    throw std::invalid_argument("random forest needs at least one tree");
  }
}

namespace {

std::size_t parse_count(std::string_view digits, std::string_view whole) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    throw std::invalid_argument("bad count in classifier '" + std::string(whole) + "'");
  }
  return v;
}

}  // namespace

ClassifierSpec parse_classifier(std::string_view text) {
  ClassifierSpec spec;
  if (text == "lda") {
    spec = ClassifierSpec::lda();
  } else if (text == "qda") {
    spec = ClassifierSpec::qda();
  } else if (text == "nb" || text == "naive-bayes") {
    spec = ClassifierSpec::naive_bayes();
  } else if (text == "logreg" || text == "logistic") {
    spec = ClassifierSpec::logistic();
  } else if (text == "rf" || text == "random-forest") {
    spec = ClassifierSpec::random_forest();
  } else if (text.starts_with("rf:")) {
    spec = ClassifierSpec::random_forest(parse_count(text.substr(3), text));
  } else if (text.starts_with("knn:")) {
    spec = ClassifierSpec::knn(parse_count(text.substr(4), text));
  } else if (text.starts_with("knn")) {
    spec = ClassifierSpec::knn(parse_count(text.substr(3), text));
  } else if (text.ends_with("-nn")) {
    spec = ClassifierSpec::knn(parse_count(text.substr(0, text.size() - 3), text));
  } else {
    throw std::invalid_argument("unknown classifier '" + std::string(text) + "'");
  }
  spec.validate();
  return spec;
}

void floor_and_normalise(std::span<double> p) {
  double total = 0.0;
  for (double& v : p) {
    if (!(v >= kProbFloor)) v = kProbFloor;  // also catches NaN
    total += v;
  }
  for (double& v : p) v /= total;
}

ProbVector::ProbVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw std::invalid_argument("empty probability vector");
  floor_and_normalise(p_);
}

Label allocate(std::span<const double> p) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < p.size(); ++j) {
    if (p[j] > p[best]) best = j;
  }
  return static_cast<Label>(best + 1);
}

TrainedModel::TrainedModel(ClassifierSpec spec, std::size_t dim, std::size_t classes,
                           std::shared_ptr<const detail::ModelImpl> impl)
    : spec_(spec), dim_(dim), classes_(classes), impl_(std::move(impl)) {}

void TrainedModel::predict_into(std::span<const double> x, std::span<double> out) const {
  if (x.size() != dim_) {
    throw std::invalid_argument("query has dimension " + std::to_string(x.size()) +
                                ", model expects " + std::to_string(dim_));
  }
  if (out.size() != classes_) throw std::invalid_argument("output span has wrong length");
  impl_->predict_raw(x, out);
  floor_and_normalise(out);
}

ProbVector TrainedModel::predict_proba(std::span<const double> x) const {
  std::vector<double> p(classes_);
  predict_into(x, p);
  return ProbVector(std::move(p));
}

Label TrainedModel::allocate(std::span<const double> x) const {
  double buf[16];
  std::vector<double> heap;
  std::span<double> out;
  if (classes_ <= 16) {
    out = std::span<double>(buf, classes_);
  } else {
    heap.resize(classes_);
    out = heap;
  }
  predict_into(x, out);
  return mri::allocate(out);
}

TrainedModel train(const ClassifierSpec& spec, const Dataset& data, std::uint64_t seed) {
  spec.validate();
  if (!data.labelled()) throw std::invalid_argument("training data must be labelled");
  if (data.dim() == 0) throw std::invalid_argument("training data has dimension 0");
  if (data.empty()) throw std::invalid_argument("training data is empty");

  std::shared_ptr<const detail::ModelImpl> impl;
  switch (spec.kind) {
    case ClassifierKind::LDA: impl = detail::fit_lda(data); break;
    case ClassifierKind::QDA: impl = detail::fit_qda(data); break;
    case ClassifierKind::KNN: impl = detail::fit_knn(data, spec.neighbours); break;
    case ClassifierKind::NaiveBayes: impl = detail::fit_naive_bayes(data); break;
    case ClassifierKind::LogisticRegression: impl = detail::fit_logistic(data); break;
    case ClassifierKind::RandomForest:
      impl = detail::fit_random_forest(data, spec.trees, seed);
      break;
  }
  return TrainedModel(spec, data.dim(), data.classes(), std::move(impl));
}

}  // namespace mri
