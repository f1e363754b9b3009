#include <algorithm>
#include <cmath>
#include <vector>

#include "mri/classifiers.hpp"

namespace mri::detail {
namespace {

// Uniform-vote k-nearest-neighbours on covariates scaled to unit standard
// deviation. Probabilities use Laplace smoothing: (votes + 1) / (k + classes).
class Knn final : public ModelImpl {
 public:
  Knn(const Dataset& data, std::size_t k)
      : d_(data.dim()), n_(data.size()), k_(std::min(k, data.size())), labels_(data.labels()) {
    inv_scale_.assign(d_, 1.0);
    if (n_ >= 2) {
      for (std::size_t a = 0; a < d_; ++a) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n_; ++i) mean += data.row(i)[a];
        mean /= double(n_);
        double ss = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
          const double r = data.row(i)[a] - mean;
          ss += r * r;
        }
        const double sd = std::sqrt(ss / double(n_ - 1));
        if (sd > 0.0 && std::isfinite(sd)) inv_scale_[a] = 1.0 / sd;
      }
    }
    points_.resize(n_ * d_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t a = 0; a < d_; ++a) points_[i * d_ + a] = data.row(i)[a] * inv_scale_[a];
    }
  }

  void predict_raw(std::span<const double> x, std::span<double> out) const override {
    // Keep the k best (distance, index) pairs, sorted ascending; the index
    // breaks distance ties so the neighbour set is deterministic.
    struct Hit {
      double dist;
      std::size_t index;
    };
    Hit buf[32];
    std::vector<Hit> heap;
    Hit* best = buf;
    if (k_ > 32) {
      heap.resize(k_);
      best = heap.data();
    }
    double q_buf[64];
    std::vector<double> q_heap;
    double* q = q_buf;
    if (d_ > 64) {
      q_heap.resize(d_);
      q = q_heap.data();
    }
    for (std::size_t a = 0; a < d_; ++a) q[a] = x[a] * inv_scale_[a];

    std::size_t filled = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double* p = &points_[i * d_];
      double dist = 0.0;
      for (std::size_t a = 0; a < d_; ++a) {
        const double r = p[a] - q[a];
        dist += r * r;
      }
      if (filled == k_ && !(dist < best[k_ - 1].dist)) continue;
      std::size_t pos = (filled < k_) ? filled++ : k_ - 1;
      while (pos > 0 && dist < best[pos - 1].dist) {
        best[pos] = best[pos - 1];
        --pos;
      }
      best[pos] = {dist, i};
    }

    std::fill(out.begin(), out.end(), 1.0);
    for (std::size_t j = 0; j < k_; ++j) out[static_cast<std::size_t>(labels_[best[j].index] - 1)] += 1.0;
    const double denom = double(k_) + double(out.size());
    for (double& v : out) v /= denom;
  }

 private:
  std::size_t d_;
  std::size_t n_;
  std::size_t k_;
  std::vector<Label> labels_;
  std::vector<double> inv_scale_;
  std::vector<double> points_;
};

}  // namespace

std::shared_ptr<const ModelImpl> fit_knn(const Dataset& data, std::size_t k) {
  return std::make_shared<Knn>(data, k);
}

}  // namespace mri::detail
