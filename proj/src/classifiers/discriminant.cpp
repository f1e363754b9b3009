// Gaussian discriminant classifiers (LDA with pooled covariance, QDA with
// per-class covariance).

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "mri/classifiers.hpp"

namespace mri::detail {
namespace {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct ClassStats {
  std::vector<std::size_t> count;
  std::vector<Vector> mean;
  std::vector<Matrix> scatter;  // sum of outer products about the class mean
};

ClassStats class_stats(const Dataset& data) {
  const std::size_t d = data.dim(), k = data.classes();
  ClassStats s;
  s.count.assign(k, 0);
  s.mean.assign(k, Vector::Zero(static_cast<Eigen::Index>(d)));
  s.scatter.assign(k, Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::size_t c = static_cast<std::size_t>(data.label(i) - 1);
    ++s.count[c];
    s.mean[c] += Eigen::Map<const Vector>(data.row(i).data(), static_cast<Eigen::Index>(d));
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (s.count[c] > 0) s.mean[c] /= static_cast<double>(s.count[c]);
  }
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::size_t c = static_cast<std::size_t>(data.label(i) - 1);
    const Vector r = Eigen::Map<const Vector>(data.row(i).data(), static_cast<Eigen::Index>(d)) - s.mean[c];
    s.scatter[c].noalias() += r * r.transpose();
  }
  return s;
}

// Adds (1e-6 * trace / d) I. A covariance with no spread at all (e.g. one
// example per class) falls back to the identity.
Matrix regularise(Matrix cov) {
  const double d = static_cast<double>(cov.rows());
  const double tr = cov.trace();
  if (!(tr > 1e-12 * d)) return Matrix::Identity(cov.rows(), cov.cols());
  cov.diagonal().array() += 1e-6 * tr / d;
  return cov;
}

void softmax_present(std::span<double> scores, const std::vector<bool>& present) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < scores.size(); ++c) {
    if (present[c]) m = std::max(m, scores[c]);
  }
  double total = 0.0;
  for (std::size_t c = 0; c < scores.size(); ++c) {
    scores[c] = present[c] ? std::exp(scores[c] - m) : 0.0;
    total += scores[c];
  }
  for (double& v : scores) v /= total;
}

Matrix pooled_covariance(const ClassStats& s, std::size_t n) {
  std::size_t present = 0;
  Matrix pooled = Matrix::Zero(s.scatter[0].rows(), s.scatter[0].cols());
  for (std::size_t c = 0; c < s.count.size(); ++c) {
    if (s.count[c] == 0) continue;
    ++present;
    pooled += s.scatter[c];
  }
  const std::size_t dof = n > present ? n - present : n;
  return pooled / static_cast<double>(dof);
}

class Lda final : public ModelImpl {
 public:
  explicit Lda(const Dataset& data) : d_(data.dim()), present_(data.classes(), false) {
    const ClassStats s = class_stats(data);
    const Matrix cov = regularise(pooled_covariance(s, data.size()));
    const Eigen::LLT<Matrix> llt(cov);
    const std::size_t k = data.classes();
    weights_.assign(k * d_, 0.0);
    bias_.assign(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
      if (s.count[c] == 0) continue;
      present_[c] = true;
      const Vector w = llt.solve(s.mean[c]);
      for (std::size_t a = 0; a < d_; ++a) weights_[c * d_ + a] = w[static_cast<Eigen::Index>(a)];
      bias_[c] = -0.5 * s.mean[c].dot(w) +
                 std::log(static_cast<double>(s.count[c]) / static_cast<double>(data.size()));
    }
  }

  void predict_raw(std::span<const double> x, std::span<double> out) const override {
    for (std::size_t c = 0; c < out.size(); ++c) {
      double v = bias_[c];
      for (std::size_t a = 0; a < d_; ++a) v += weights_[c * d_ + a] * x[a];
      out[c] = v;
    }
    softmax_present(out, present_);
  }

 private:
  std::size_t d_;
  std::vector<bool> present_;
  std::vector<double> weights_;  // k x d, Sigma^-1 mu_c
  std::vector<double> bias_;
};

class Qda final : public ModelImpl {
 public:
  explicit Qda(const Dataset& data) : d_(data.dim()), present_(data.classes(), false) {
    const ClassStats s = class_stats(data);
    const std::size_t k = data.classes();
    const Matrix pooled = pooled_covariance(s, data.size());
    means_.assign(k * d_, 0.0);
    precision_.assign(k * d_ * d_, 0.0);
    offset_.assign(k, 0.0);
    for (std::size_t c = 0; c < k; ++c) {
      if (s.count[c] == 0) continue;
      present_[c] = true;
      // Classes with fewer than two examples borrow the pooled covariance.
      Matrix cov = s.count[c] >= 2 ? Matrix(s.scatter[c] / double(s.count[c] - 1)) : pooled;
      if (!(cov.trace() > 1e-12 * double(d_))) cov = pooled;
      cov = regularise(cov);
      const Eigen::LLT<Matrix> llt(cov);
      const Matrix inv = llt.solve(Matrix::Identity(cov.rows(), cov.cols()));
      const Matrix l = llt.matrixL();
      const double log_det = 2.0 * l.diagonal().array().log().sum();
      for (std::size_t a = 0; a < d_; ++a) {
        means_[c * d_ + a] = s.mean[c][static_cast<Eigen::Index>(a)];
        for (std::size_t b = 0; b < d_; ++b) {
          precision_[(c * d_ + a) * d_ + b] = inv(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        }
      }
      offset_[c] = -0.5 * log_det +
                   std::log(static_cast<double>(s.count[c]) / static_cast<double>(data.size()));
    }
  }

  void predict_raw(std::span<const double> x, std::span<double> out) const override {
    double diff_buf[64];
    std::vector<double> diff_heap;
    double* diff = diff_buf;
    if (d_ > 64) {
      diff_heap.resize(d_);
      diff = diff_heap.data();
    }
    for (std::size_t c = 0; c < out.size(); ++c) {
      if (!present_[c]) {
        out[c] = 0.0;
        continue;
      }
      for (std::size_t a = 0; a < d_; ++a) diff[a] = x[a] - means_[c * d_ + a];
      double q = 0.0;
      const double* p = &precision_[c * d_ * d_];
      for (std::size_t a = 0; a < d_; ++a) {
        double row = 0.0;
        for (std::size_t b = 0; b < d_; ++b) row += p[a * d_ + b] * diff[b];
        q += diff[a] * row;
      }
      out[c] = offset_[c] - 0.5 * q;
    }
    softmax_present(out, present_);
  }

 private:
  std::size_t d_;
  std::vector<bool> present_;
  std::vector<double> means_;
  std::vector<double> precision_;
  std::vector<double> offset_;
};

}  // namespace

std::shared_ptr<const ModelImpl> fit_lda(const Dataset& data) { return std::make_shared<Lda>(data); }
std::shared_ptr<const ModelImpl> fit_qda(const Dataset& data) { return std::make_shared<Qda>(data); }

}  // namespace mri::detail
