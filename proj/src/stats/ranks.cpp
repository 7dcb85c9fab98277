#include <algorithm>
#include <cmath>
#include <numeric>

#include "salbench/error.hpp"
#include "salbench/stats.hpp"

namespace salbench::stats {

std::vector<double> rank_with_ties(std::span<const double> scores, Direction direction) {
  for (double s : scores) {
    if (!std::isfinite(s)) throw Error(ErrorCode::NonFiniteScore, "cannot rank a non-finite score");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return direction == Direction::HigherIsBetter ? scores[a] > scores[b] : scores[a] < scores[b];
  });
  std::vector<double> ranks(scores.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

double tie_term(std::span<const double> ranks) {
  std::vector<double> sorted(ranks.begin(), ranks.end());
  std::sort(sorted.begin(), sorted.end());
  double total = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    total += t * t * t - t;
    i = j;
  }
  return total;
}

RankMatrix::RankMatrix(std::vector<std::vector<double>> ranks) : ranks_(std::move(ranks)) {
  for (const auto& row : ranks_) tie_terms_.push_back(tie_term(row));
}

RankMatrix RankMatrix::from_scores(const std::vector<std::vector<double>>& scores, Direction direction) {
  std::vector<std::vector<double>> ranks;
  ranks.reserve(scores.size());
  for (const auto& judge : scores) ranks.push_back(rank_with_ties(judge, direction));
  return from_ranks(std::move(ranks));
}

RankMatrix RankMatrix::from_ranks(std::vector<std::vector<double>> ranks) {
  if (ranks.empty()) throw Error(ErrorCode::InvalidArgument, "rank matrix needs at least one judge");
  const std::size_t n = ranks.front().size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "rank matrix needs at least one object");
  const double expected = n * (n + 1) / 2.0;
  for (const auto& row : ranks) {
    if (row.size() != n) throw Error(ErrorCode::InvalidArgument, "judges rank different numbers of objects");
    double sum = 0.0;
    for (double r : row) {
      if (!std::isfinite(r) || r < 1.0 || r > static_cast<double>(n)) {
        throw Error(ErrorCode::InvalidArgument, "rank outside [1, n]");
      }
      sum += r;
    }
    if (std::abs(sum - expected) > 1e-9) throw Error(ErrorCode::InvalidArgument, "ranks do not sum to n(n+1)/2");
  }
  return RankMatrix(std::move(ranks));
}

}  // namespace salbench::stats
