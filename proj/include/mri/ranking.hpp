#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace mri {

enum class Direction { HigherBetter, LowerBetter };

/// Ranks 1..S (1 = best); tied values share the average of their positions.
std::vector<double> average_ranks(std::span<const double> values, Direction direction);

/// Strategies ranked on several criteria. `ranks[c][s]` is strategy s's rank on
/// criterion c. The overall rank orders strategies by mean rank, then by lower
/// variance of the rank vector, then by name; it is always a permutation of 1..S.
struct RankTable {
  std::vector<std::string> strategies;
  std::vector<std::string> criteria;
  std::vector<std::vector<double>> values;  // raw criterion values, [c][s]; empty when ranks were given
  std::vector<std::vector<double>> ranks;   // [c][s]
  std::vector<double> mean_rank;            // [s]
  std::vector<double> rank_variance;        // [s], population variance
  std::vector<std::size_t> overall;         // [s]

  std::size_t index_of(const std::string& strategy) const;
};

/// Rank raw scores per criterion and combine.
RankTable overall_rank(const std::vector<std::string>& strategies, const std::vector<std::string>& criteria,
                       const std::vector<std::vector<double>>& values,
                       const std::vector<Direction>& directions);

/// Combine precomputed rank vectors (for example the overall ranks of lower levels).
RankTable combine_ranks(const std::vector<std::string>& strategies, const std::vector<std::string>& criteria,
                        const std::vector<std::vector<double>>& ranks);

/// Successive averaging of overall ranks: problem -> group -> classifier -> all.
struct ProblemRanking {  // R1 leaf
  std::string problem;
  std::string group;
  std::string classifier;
  RankTable table;
};
struct GroupRanking {  // R2
  std::string group;
  std::string classifier;
  RankTable table;
};
struct ClassifierRanking {  // R3
  std::string classifier;
  RankTable table;
};
struct BaselineCounts {  // R5
  std::string baseline;
  std::vector<std::string> strategies;
  std::vector<std::string> classifiers;
  std::vector<std::vector<std::size_t>> per_classifier;  // [classifier][strategy]
  std::vector<std::size_t> total;                        // [strategy]
  std::size_t pairings = 0;                              // group-classifier rankings counted
};
struct AggregateRanking {
  std::vector<ProblemRanking> r1;
  std::vector<GroupRanking> r2;
  std::vector<ClassifierRanking> r3;
  RankTable r4;
  BaselineCounts r5;  // empty strategies when the baseline is absent
};

/// Groups and classifiers are ordered by first appearance in `leaves`.
/// Throws if the leaves disagree on the strategy list.
AggregateRanking aggregate_rankings(const std::vector<ProblemRanking>& leaves,
                                    const std::string& baseline = "rs");

}  // namespace mri
