#include "mri/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mri {

std::vector<double> average_ranks(std::span<const double> values, Direction direction) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto better = [&](std::size_t a, std::size_t b) {
    return direction == Direction::HigherBetter ? values[a] > values[b] : values[a] < values[b];
  };
  std::stable_sort(order.begin(), order.end(), better);
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = 0.5 * double(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

std::size_t RankTable::index_of(const std::string& strategy) const {
  const auto it = std::find(strategies.begin(), strategies.end(), strategy);
  if (it == strategies.end()) throw std::out_of_range("strategy '" + strategy + "' not in rank table");
  return static_cast<std::size_t>(it - strategies.begin());
}

RankTable combine_ranks(const std::vector<std::string>& strategies, const std::vector<std::string>& criteria,
                        const std::vector<std::vector<double>>& ranks) {
  const std::size_t s_count = strategies.size();
  if (s_count == 0) throw std::invalid_argument("no strategies to rank");
  if (criteria.empty() || criteria.size() != ranks.size()) {
    throw std::invalid_argument("rank rows must match a nonempty criterion list");
  }
  for (const auto& row : ranks) {
    if (row.size() != s_count) throw std::invalid_argument("missing rank for some strategy");
  }
  RankTable t;
  t.strategies = strategies;
  t.criteria = criteria;
  t.ranks = ranks;
  t.mean_rank.assign(s_count, 0.0);
  t.rank_variance.assign(s_count, 0.0);
  const double c_count = double(criteria.size());
  for (std::size_t s = 0; s < s_count; ++s) {
    double sum = 0.0;
    for (const auto& row : ranks) sum += row[s];
    const double mean = sum / c_count;
    double ss = 0.0;
    for (const auto& row : ranks) ss += (row[s] - mean) * (row[s] - mean);
    t.mean_rank[s] = mean;
    t.rank_variance[s] = ss / c_count;
  }
  std::vector<std::size_t> order(s_count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (t.mean_rank[a] != t.mean_rank[b]) return t.mean_rank[a] < t.mean_rank[b];
    if (t.rank_variance[a] != t.rank_variance[b]) return t.rank_variance[a] < t.rank_variance[b];
    return strategies[a] < strategies[b];
  });
  t.overall.assign(s_count, 0);
  for (std::size_t pos = 0; pos < s_count; ++pos) t.overall[order[pos]] = pos + 1;
  return t;
}

RankTable overall_rank(const std::vector<std::string>& strategies, const std::vector<std::string>& criteria,
                       const std::vector<std::vector<double>>& values,
                       const std::vector<Direction>& directions) {
  if (values.size() != criteria.size() || directions.size() != criteria.size()) {
    throw std::invalid_argument("criteria, values and directions differ in length");
  }
  std::vector<std::vector<double>> ranks;
  for (std::size_t c = 0; c < values.size(); ++c) {
    if (values[c].size() != strategies.size()) throw std::invalid_argument("missing score for some strategy");
    ranks.push_back(average_ranks(values[c], directions[c]));
  }
  RankTable t = combine_ranks(strategies, criteria, ranks);
  t.values = values;
  return t;
}

namespace {

template <typename T, typename Key>
std::vector<std::string> first_appearance(const std::vector<T>& items, Key key) {
  std::vector<std::string> out;
  for (const auto& it : items) {
    const std::string& k = key(it);
    if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  }
  return out;
}

std::vector<double> overall_as_double(const RankTable& t) {
  return {t.overall.begin(), t.overall.end()};
}

}  // namespace

AggregateRanking aggregate_rankings(const std::vector<ProblemRanking>& leaves, const std::string& baseline) {
  if (leaves.empty()) throw std::invalid_argument("no rankings to aggregate");
  const std::vector<std::string>& strategies = leaves.front().table.strategies;
  for (const auto& leaf : leaves) {
    if (leaf.table.strategies != strategies) throw std::invalid_argument("inconsistent strategy sets across rankings");
  }
  AggregateRanking out;
  out.r1 = leaves;

  const auto classifiers = first_appearance(leaves, [](const ProblemRanking& l) -> const std::string& { return l.classifier; });
  const auto groups = first_appearance(leaves, [](const ProblemRanking& l) -> const std::string& { return l.group; });

  for (const auto& cls : classifiers) {
    for (const auto& grp : groups) {
      std::vector<std::string> names;
      std::vector<std::vector<double>> rows;
      for (const auto& leaf : leaves) {
        if (leaf.classifier != cls || leaf.group != grp) continue;
        names.push_back(leaf.problem);
        rows.push_back(overall_as_double(leaf.table));
      }
      if (!rows.empty()) out.r2.push_back({grp, cls, combine_ranks(strategies, names, rows)});
    }
  }

  for (const auto& cls : classifiers) {
    std::vector<std::string> names;
    std::vector<std::vector<double>> rows;
    for (const auto& g : out.r2) {
      if (g.classifier != cls) continue;
      names.push_back(g.group);
      rows.push_back(overall_as_double(g.table));
    }
    out.r3.push_back({cls, combine_ranks(strategies, names, rows)});
  }

  {
    std::vector<std::vector<double>> rows;
    for (const auto& c : out.r3) rows.push_back(overall_as_double(c.table));
    out.r4 = combine_ranks(strategies, classifiers, rows);
  }

  out.r5.baseline = baseline;
  const auto base_it = std::find(strategies.begin(), strategies.end(), baseline);
  if (base_it != strategies.end()) {
    const std::size_t b = static_cast<std::size_t>(base_it - strategies.begin());
    out.r5.strategies = strategies;
    out.r5.classifiers = classifiers;
    out.r5.per_classifier.assign(classifiers.size(), std::vector<std::size_t>(strategies.size(), 0));
    out.r5.total.assign(strategies.size(), 0);
    for (const auto& g : out.r2) {
      const std::size_t ci = static_cast<std::size_t>(
          std::find(classifiers.begin(), classifiers.end(), g.classifier) - classifiers.begin());
      for (std::size_t s = 0; s < strategies.size(); ++s) {
        if (g.table.overall[s] < g.table.overall[b]) {
          ++out.r5.per_classifier[ci][s];
          ++out.r5.total[s];
        }
      }
      ++out.r5.pairings;
    }
  }
  return out;
}

}  // namespace mri
