#include <cmath>
#include <stdexcept>

#include "mri/strategies.hpp"

namespace mri {

std::size_t select(std::span<const double> scores, Rng& rng) {
  if (scores.empty()) throw std::invalid_argument("cannot select from an empty score vector");
  std::size_t best = scores.size();
  std::size_t ties = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i])) continue;
    if (best == scores.size() || scores[i] > scores[best]) {
      best = i;
      ties = 1;
    } else if (scores[i] == scores[best]) {
      // Reservoir sampling over the tied maxima.
      ++ties;
      if (uniform_index(rng, ties) == 0) best = i;
    }
  }
  if (best == scores.size()) throw std::invalid_argument("no finite score to select");
  return best;
}

}  // namespace mri
