#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mri/classifiers.hpp"
#include "mri/rng.hpp"

namespace mri::detail {

std::vector<std::size_t> forest_bootstrap(std::size_t n, std::size_t t, std::uint64_t seed) {
  Rng rng = make_rng(derive_seed(seed, {0xb007ULL, t}));
  std::vector<std::size_t> idx(n);
  for (auto& i : idx) i = uniform_index(rng, n);
  return idx;
}

namespace {

struct Node {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t leaf = 0;  // offset into Tree::leaf_probs
};

struct Tree {
  std::vector<Node> nodes;
  std::vector<double> leaf_probs;
};

// Grows one unpruned CART tree (Gini impurity, minimum leaf size 1) on a
// bootstrap sample, trying ceil(sqrt(d)) random features per split.
class TreeBuilder {
 public:
  TreeBuilder(const Dataset& data, Rng& rng)
      : data_(data), rng_(rng), k_(data.classes()), d_(data.dim()),
        mtry_(static_cast<std::size_t>(std::ceil(std::sqrt(double(data.dim()))))) {}

  Tree build(std::vector<std::size_t> rows) {
    Tree tree;
    grow(tree, rows);
    return tree;
  }

 private:
  struct Split {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double impurity = 0.0;
  };

  std::size_t grow(Tree& tree, std::vector<std::size_t>& rows) {
    const std::size_t id = tree.nodes.size();
    tree.nodes.emplace_back();

    std::vector<double> counts(k_, 0.0);
    for (std::size_t r : rows) counts[static_cast<std::size_t>(data_.label(r) - 1)] += 1.0;
    const bool pure = std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0; }) <= 1;

    Split split;
    if (!pure && rows.size() >= 2) split = best_split(rows);
    if (!split.found) {
      tree.nodes[id].leaf = tree.leaf_probs.size();
      for (double c : counts) tree.leaf_probs.push_back(c / double(rows.size()));
      return id;
    }

    std::vector<std::size_t> left, right;
    for (std::size_t r : rows) {
      (data_.row(r)[split.feature] <= split.threshold ? left : right).push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    tree.nodes[id].feature = static_cast<int>(split.feature);
    tree.nodes[id].threshold = split.threshold;
    const std::size_t l = grow(tree, left);
    const std::size_t r = grow(tree, right);
    tree.nodes[id].left = l;
    tree.nodes[id].right = r;
    return id;
  }

  Split best_split(const std::vector<std::size_t>& rows) {
    std::vector<std::size_t> features(d_);
    std::iota(features.begin(), features.end(), std::size_t{0});
    shuffle(features, rng_);

    Split best;
    std::vector<std::pair<double, std::size_t>> sorted(rows.size());
    std::vector<double> left(k_), right(k_);
    for (std::size_t fi = 0; fi < d_; ++fi) {
      // Features beyond the first mtry are only consulted when none of
      // those admits a split.
      if (fi >= mtry_ && best.found) break;
      const std::size_t f = features[fi];
      for (std::size_t i = 0; i < rows.size(); ++i) {
        sorted[i] = {data_.row(rows[i])[f], static_cast<std::size_t>(data_.label(rows[i]) - 1)};
      }
      std::sort(sorted.begin(), sorted.end());
      std::fill(left.begin(), left.end(), 0.0);
      std::fill(right.begin(), right.end(), 0.0);
      for (const auto& s : sorted) right[s.second] += 1.0;
      double sq_left = 0.0, sq_right = 0.0;
      for (double c : right) sq_right += c * c;
      const double n = double(sorted.size());
      for (std::size_t i = 1; i < sorted.size(); ++i) {
        const std::size_t c = sorted[i - 1].second;
        sq_left += 2.0 * left[c] + 1.0;
        left[c] += 1.0;
        sq_right -= 2.0 * right[c] - 1.0;
        right[c] -= 1.0;
        if (sorted[i].first <= sorted[i - 1].first) continue;
        const double nl = double(i), nr = n - nl;
        const double impurity = (nl - sq_left / nl) + (nr - sq_right / nr);
        if (!best.found || impurity < best.impurity) {
          double t = 0.5 * (sorted[i - 1].first + sorted[i].first);
          if (!(t < sorted[i].first)) t = sorted[i - 1].first;
          best = {true, f, t, impurity};
        }
      }
    }
    return best;
  }

  const Dataset& data_;
  Rng& rng_;
  std::size_t k_;
  std::size_t d_;
  std::size_t mtry_;
};

class Forest final : public ModelImpl {
 public:
  Forest(const Dataset& data, std::size_t trees, std::uint64_t seed) {
    trees_.reserve(trees);
    for (std::size_t t = 0; t < trees; ++t) {
      Rng rng = make_rng(derive_seed(seed, {0x7eeeULL, t}));
      TreeBuilder builder(data, rng);
      trees_.push_back(builder.build(forest_bootstrap(data.size(), t, seed)));
    }
  }

  void predict_raw(std::span<const double> x, std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    for (const Tree& tree : trees_) {
      std::size_t id = 0;
      while (tree.nodes[id].feature >= 0) {
        const Node& node = tree.nodes[id];
        id = x[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left : node.right;
      }
      const double* p = &tree.leaf_probs[tree.nodes[id].leaf];
      for (std::size_t c = 0; c < out.size(); ++c) out[c] += p[c];
    }
    for (double& v : out) v /= double(trees_.size());
  }

 private:
  std::vector<Tree> trees_;
};

}  // namespace

std::shared_ptr<const ModelImpl> fit_random_forest(const Dataset& data, std::size_t trees,
                                                   std::uint64_t seed) {
  return std::make_shared<Forest>(data, trees, seed);
}

}  // namespace mri::detail
