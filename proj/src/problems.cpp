#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mri/dataset.hpp"
#include "mri/rng.hpp"

namespace mri {
namespace {

// Axis-aligned Gaussian component of a 2-d class-conditional mixture.
struct Component {
  double weight;
  std::array<double, 2> mean;
  std::array<double, 2> sd;
};

using Mixture = std::vector<Component>;

struct AbstractSpec {
  Mixture class1;
  Mixture class2;
};

// Component parameters are chosen so that each problem has a Bayes error
// rate close to 0.1 under a balanced prior.
AbstractSpec abstract_spec(const std::string& name) {
  if (name == kFourGaussian) {
    // Ripley's synthetic problem: variance 0.03 per axis.
    const double s = std::sqrt(0.03);
    return {{{0.5, {-0.3, 0.7}, {s, s}}, {0.5, {0.4, 0.7}, {s, s}}},
            {{0.5, {-0.7, 0.3}, {s, s}}, {0.5, {0.3, 0.3}, {s, s}}}};
  }
  if (name == kQuadraticBoundary) {
    return {{{1.0, {0.0, 0.0}, {1.0, 1.0}}}, {{1.0, {3.5, 0.0}, {2.0, 0.5}}}};
  }
  if (name == kTriangles) {
    // Two interleaved triangles of three Gaussians each.
    const double s = 0.305;
    AbstractSpec spec;
    for (int i = 0; i < 3; ++i) {
      const double a = std::numbers::pi / 2 + i * 2 * std::numbers::pi / 3;
      spec.class1.push_back({1.0 / 3, {std::cos(a), std::sin(a)}, {s, s}});
      spec.class2.push_back({1.0 / 3, {-std::cos(a), -std::sin(a)}, {s, s}});
    }
    return spec;
  }
  if (name == kOscillating) {
    // Alternating rows of Gaussians; the boundary zig-zags between them.
    const double s = 0.285;
    AbstractSpec spec;
    for (int i = 0; i < 6; ++i) {
      const double up = (i % 2 == 0) ? 0.5 : -0.5;
      spec.class1.push_back({1.0 / 6, {double(i), up}, {s, s}});
      spec.class2.push_back({1.0 / 6, {double(i), -up}, {s, s}});
    }
    return spec;
  }
  if (name == kSharpNonlinear) {
    // An L-shaped pair of elongated Gaussians wrapped around a compact one.
    return {{{0.5, {-1.0, 0.0}, {0.5, std::sqrt(1.5)}}, {0.5, {0.5, -1.2}, {std::sqrt(1.5), 0.5}}},
            {{1.0, {0.4, 0.4}, {0.6, 0.6}}}};
  }
  throw DataError("unknown problem '" + name + "'");
}

double log_sum_exp(const std::vector<double>& v) {
  double m = -INFINITY;
  for (double a : v) m = std::max(m, a);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double a : v) s += std::exp(a - m);
  return m + std::log(s);
}

// Log density up to the constant -log(2 pi) shared by every component.
double mixture_log_density(const Mixture& m, std::span<const double> x) {
  std::vector<double> terms;
  terms.reserve(m.size());
  for (const auto& c : m) {
    double log_q = std::log(c.weight);
    for (int a = 0; a < 2; ++a) {
      const double z = (x[a] - c.mean[a]) / c.sd[a];
      log_q += -0.5 * z * z - std::log(c.sd[a]);
    }
    terms.push_back(log_q);
  }
  return log_sum_exp(terms);
}

void draw_from(const Mixture& m, Rng& rng, std::vector<double>& out) {
  double u = uniform01(rng);
  std::size_t pick = m.size() - 1;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (u < m[i].weight) {
      pick = i;
      break;
    }
    u -= m[i].weight;
  }
  for (int a = 0; a < 2; ++a) out.push_back(m[pick].mean[a] + m[pick].sd[a] * normal01(rng));
}

}  // namespace

std::vector<std::string> abstract_problem_names() {
  return {kFourGaussian, kQuadraticBoundary, kTriangles, kOscillating, kSharpNonlinear};
}

Dataset generate_two_gaussian(std::size_t n, std::uint64_t seed) {
  if (n % 2 != 0) {
    throw DataError("two-gaussian sampling holds the prior fixed, so n must be even (got " +
                    std::to_string(n) + ")");
  }
  Rng rng = make_rng(seed);
  std::vector<double> x;
  std::vector<Label> y;
  x.reserve(n);
  y.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Label c = (i < n / 2) ? 1 : 2;
    x.push_back((c == 1 ? -1.0 : 1.0) + normal01(rng));
    y.push_back(c);
  }
  return Dataset(1, 2, std::move(x), std::move(y));
}

Dataset generate_abstract_problem(const std::string& name, std::size_t n, std::uint64_t seed) {
  const AbstractSpec spec = abstract_spec(name);
  Rng rng = make_rng(seed);
  std::vector<double> x;
  std::vector<Label> y;
  x.reserve(2 * n);
  y.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Label c = uniform01(rng) < 0.5 ? 1 : 2;
    draw_from(c == 1 ? spec.class1 : spec.class2, rng, x);
    y.push_back(c);
  }
  return Dataset(2, 2, std::move(x), std::move(y));
}

Problem make_problem(const std::string& name) {
  Problem p;
  p.name = name;
  p.classes = 2;
  p.prior = {0.5, 0.5};
  if (name == kTwoGaussian) {
    p.dim = 1;
    p.sample = [](std::size_t n, std::uint64_t seed) { return generate_two_gaussian(n, seed); };
    p.posterior = [](std::span<const double> x) {
      // log N(x; -1, 1) - log N(x; 1, 1) = -2x
      const double p1 = 1.0 / (1.0 + std::exp(2.0 * x[0]));
      return std::vector<double>{p1, 1.0 - p1};
    };
    return p;
  }
  const AbstractSpec spec = abstract_spec(name);
  p.dim = 2;
  p.sample = [name](std::size_t n, std::uint64_t seed) {
    return generate_abstract_problem(name, n, seed);
  };
  p.posterior = [spec](std::span<const double> x) {
    const double a = mixture_log_density(spec.class1, x);
    const double b = mixture_log_density(spec.class2, x);
    const double p1 = 1.0 / (1.0 + std::exp(b - a));
    return std::vector<double>{p1, 1.0 - p1};
  };
  return p;
}

}  // namespace mri
