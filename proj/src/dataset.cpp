#include "mri/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "mri/rng.hpp"

namespace mri {

Dataset::Dataset(std::size_t dim, std::size_t classes) : dim_(dim), classes_(classes) {}

Dataset::Dataset(std::size_t dim, std::size_t classes, std::vector<double> x, std::vector<Label> y)
    : dim_(dim), classes_(classes), x_(std::move(x)), y_(std::move(y)) {
  if (dim_ == 0 && !x_.empty()) throw DataError("dataset dimension must be positive");
  if (dim_ != 0 && x_.size() % dim_ != 0) throw DataError("covariate buffer is not a multiple of the dimension");
  if (y_.size() != size()) {
    throw DataError("label count " + std::to_string(y_.size()) + " does not match row count " +
                    std::to_string(size()));
  }
  for (Label v : y_) check_label(v);
}

Dataset Dataset::unlabelled(std::size_t dim, std::size_t classes, std::vector<double> x) {
  Dataset d(dim, classes);
  if (dim == 0 && !x.empty()) throw DataError("dataset dimension must be positive");
  if (dim != 0 && x.size() % dim != 0) throw DataError("covariate buffer is not a multiple of the dimension");
  d.labelled_ = false;
  d.x_ = std::move(x);
  return d;
}

void Dataset::check_label(Label y) const {
  if (y < 1 || static_cast<std::size_t>(y) > classes_) {
    throw DataError("label " + std::to_string(y) + " outside 1.." + std::to_string(classes_));
  }
}

Dataset Dataset::subset(std::span<const std::size_t> idx) const {
  Dataset out(dim_, classes_);
  out.labelled_ = labelled_;
  out.x_.reserve(idx.size() * dim_);
  if (labelled_) out.y_.reserve(idx.size());
  for (std::size_t i : idx) {
    if (i >= size()) throw DataError("subset index out of range");
    auto r = row(i);
    out.x_.insert(out.x_.end(), r.begin(), r.end());
    if (labelled_) out.y_.push_back(y_[i]);
  }
  return out;
}

Dataset Dataset::with_example(std::span<const double> x, Label y) const {
  Dataset out = *this;
  out.append(x, y);
  return out;
}

void Dataset::append(std::span<const double> x, Label y) {
  if (!labelled_) throw DataError("cannot append a labelled example to an unlabelled dataset");
  if (x.size() != dim_) throw DataError("example dimension mismatch");
  check_label(y);
  x_.insert(x_.end(), x.begin(), x.end());
  y_.push_back(y);
}

void Dataset::append(std::span<const double> x) {
  if (labelled_ && !empty()) throw DataError("labelled dataset requires a label");
  if (x.size() != dim_) throw DataError("example dimension mismatch");
  labelled_ = false;
  x_.insert(x_.end(), x.begin(), x.end());
}

std::vector<std::size_t> Dataset::class_counts() const {
  std::vector<std::size_t> counts(classes_, 0);
  for (Label v : y_) ++counts[static_cast<std::size_t>(v - 1)];
  return counts;
}

Split make_split(const Dataset& data, std::size_t n_initial, std::size_t n_pool,
                 std::size_t n_test, std::uint64_t seed) {
  constexpr int kMaxAttempts = 1000;
  if (!data.labelled()) throw DataError("make_split needs a labelled dataset");
  const std::size_t total = n_initial + n_pool + n_test;
  if (total > data.size()) {
    throw DataError("split sizes " + std::to_string(total) + " exceed dataset size " +
                    std::to_string(data.size()));
  }
  if (n_initial < data.classes()) {
    throw DataError("initial size " + std::to_string(n_initial) + " is below the class count " +
                    std::to_string(data.classes()));
  }

  Rng rng = make_rng(seed);
  std::vector<std::size_t> order(data.size());
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle(order, rng);

    std::vector<bool> present(data.classes(), false), covered(data.classes(), false);
    for (std::size_t i = 0; i < total; ++i) present[data.label(order[i]) - 1] = true;
    for (std::size_t i = 0; i < n_initial; ++i) covered[data.label(order[i]) - 1] = true;
    if (present != covered) continue;

    Split s;
    s.initial_index.assign(order.begin(), order.begin() + n_initial);
    s.pool_index.assign(order.begin() + n_initial, order.begin() + n_initial + n_pool);
    s.test_index.assign(order.begin() + n_initial + n_pool, order.begin() + total);
    std::vector<bool> seen(data.size(), false);
    for (const auto* part : {&s.initial_index, &s.pool_index, &s.test_index}) {
      for (std::size_t i : *part) {
        if (seen[i]) throw DataError("split index sets overlap");
        seen[i] = true;
      }
    }
    s.initial = data.subset(s.initial_index);
    s.pool = data.subset(s.pool_index);
    s.test = data.subset(s.test_index);
    return s;
  }
  throw DataError("could not draw an initial set covering every class after " +
                  std::to_string(kMaxAttempts) + " attempts");
}

}  // namespace mri
