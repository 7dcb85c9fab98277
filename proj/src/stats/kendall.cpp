#include <algorithm>
#include <cmath>

#include "salbench/error.hpp"
#include "salbench/stats.hpp"

namespace salbench::stats {

KendallW kendalls_w(const RankMatrix& ranks) {
  const double m = static_cast<double>(ranks.judges());
  const double n = static_cast<double>(ranks.objects());
  KendallW out;
  out.rank_totals.assign(ranks.objects(), 0.0);
  for (const auto& judge : ranks.ranks()) {
    for (std::size_t i = 0; i < judge.size(); ++i) out.rank_totals[i] += judge[i];
  }
  out.mean_total = m * (n + 1.0) / 2.0;
  for (double r : out.rank_totals) out.s += (r - out.mean_total) * (r - out.mean_total);
  for (double t : ranks.tie_terms()) out.tie_sum += t;

  const double denom = m * m * (n * n * n - n) - m * out.tie_sum;
  if (!(denom > 0.0)) throw Error(ErrorCode::DegenerateAllTied, "every judge ties every object");
  out.w = std::clamp(12.0 * out.s / denom, 0.0, 1.0);
  return out;
}

std::string interpret_w(double w) {
  if (!(w >= -1e-12 && w <= 1.0 + 1e-12)) throw Error(ErrorCode::OutOfRange, "W must lie in [0, 1]");
  if (w >= 1.0 - 1e-12) return "Complete agreement";
  if (w >= 0.9) return "Unusually strong agreement";
  if (w >= 0.7) return "Strong agreement";
  if (w >= 0.5) return "Moderate agreement";
  return "Weak agreement";
}

std::string rank_confidence(double w) {
  interpret_w(w);  // range check
  if (w >= 0.9) return "Very High";
  if (w >= 0.7) return "High";
  if (w >= 0.5) return "Fair";
  return "Low";
}

}  // namespace salbench::stats
