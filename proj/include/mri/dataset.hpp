#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mri {

/// Class labels are 1-based: a problem with k classes uses labels 1..k.
/// Probability vectors are 0-based, so class `c` lives at index `c - 1`.
using Label = int;

class DataError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Covariate matrix (row-major) with optional labels. The class count is
/// carried as metadata so that classes absent from a sample are still known.
class Dataset {
 public:
  Dataset() = default;
  Dataset(std::size_t dim, std::size_t classes);
  Dataset(std::size_t dim, std::size_t classes, std::vector<double> x, std::vector<Label> y);
  /// Unlabelled covariates.
  static Dataset unlabelled(std::size_t dim, std::size_t classes, std::vector<double> x);

  std::size_t size() const { return dim_ == 0 ? 0 : x_.size() / dim_; }
  bool empty() const { return x_.empty(); }
  std::size_t dim() const { return dim_; }
  std::size_t classes() const { return classes_; }
  bool labelled() const { return labelled_; }

  std::span<const double> row(std::size_t i) const { return {x_.data() + i * dim_, dim_}; }
  Label label(std::size_t i) const { return y_[i]; }
  const std::vector<double>& values() const { return x_; }
  const std::vector<Label>& labels() const { return y_; }

  /// Rows at `idx` (repeats allowed), labels kept when present.
  Dataset subset(std::span<const std::size_t> idx) const;
  /// Copy with one labelled example appended.
  Dataset with_example(std::span<const double> x, Label y) const;

  void append(std::span<const double> x, Label y);
  void append(std::span<const double> x);

  /// Per-class example counts, index c-1 for class c.
  std::vector<std::size_t> class_counts() const;

 private:
  void check_label(Label y) const;

  std::size_t dim_ = 0;
  std::size_t classes_ = 0;
  bool labelled_ = true;
  std::vector<double> x_;
  std::vector<Label> y_;
};

/// A classification problem. Synthetic problems carry a sampler and the Bayes
/// class-probability function p(Y|x).
struct Problem {
  std::string name;
  std::size_t dim = 0;
  std::size_t classes = 0;
  std::vector<double> prior;
  std::function<Dataset(std::size_t n, std::uint64_t seed)> sample;
  std::function<std::vector<double>(std::span<const double>)> posterior;

  bool synthetic() const { return static_cast<bool>(posterior); }
};

/// The three disjoint parts of one experimental replicate. Pool labels are kept
/// for the oracle and must never be read by a selection strategy.
struct Split {
  Dataset initial;
  Dataset pool;
  Dataset test;
  std::vector<std::size_t> initial_index;
  std::vector<std::size_t> pool_index;
  std::vector<std::size_t> test_index;
};

// Problem names accepted by make_problem and generate_abstract_problem.
inline constexpr const char* kTwoGaussian = "two-gaussian";
inline constexpr const char* kFourGaussian = "four-gaussian";
inline constexpr const char* kQuadraticBoundary = "quadratic-boundary";
inline constexpr const char* kTriangles = "triangles";
inline constexpr const char* kOscillating = "oscillating";
inline constexpr const char* kSharpNonlinear = "sharp-nonlinear";

std::vector<std::string> abstract_problem_names();

/// Balanced 1-d mixture N(-1,1) (class 1) and N(1,1) (class 2); exactly n/2 of
/// each class. Throws DataError for odd n.
Dataset generate_two_gaussian(std::size_t n, std::uint64_t seed);

/// n iid draws from one of the 2-d abstract problems (balanced prior).
Dataset generate_abstract_problem(const std::string& name, std::size_t n, std::uint64_t seed);

/// Problem metadata, sampler and Bayes posterior for any synthetic name.
Problem make_problem(const std::string& name);

/// Shuffle and cut into initial/pool/test. The initial part is redrawn (up to
/// 1000 shuffles) until it covers every class present in the drawn sample.
Split make_split(const Dataset& data, std::size_t n_initial, std::size_t n_pool,
                 std::size_t n_test, std::uint64_t seed);

// CSV ingestion. Each failure mode has its own exception type.
class CsvError : public DataError {
 public:
  using DataError::DataError;
};
class CsvEmptyError : public CsvError {
 public:
  using CsvError::CsvError;
};
class CsvMissingColumnError : public CsvError {
 public:
  using CsvError::CsvError;
};
class CsvNonNumericError : public CsvError {
 public:
  using CsvError::CsvError;
};

/// Load a headed CSV. Raw label values are re-encoded to 1..k in sorted order
/// (numeric order when every label parses as a number, else lexicographic).
Dataset load_csv(const std::string& path, const std::string& label_column = "class");

/// Write a labelled dataset as CSV with columns x1..xd and `label_column`.
/// Values are printed with round-trip precision.
void write_csv(const Dataset& data, const std::string& path,
               const std::string& label_column = "class");

}  // namespace mri
