#include <algorithm>
#include <cmath>
#include <cstdint>
#include <array>
#include <unordered_map>

#include <boost/math/special_functions/gamma.hpp>

#include "salbench/error.hpp"
#include "salbench/stats.hpp"

namespace salbench::stats {

std::string_view to_string(PValueMethod m) noexcept {
  return m == PValueMethod::Exact ? "exact" : "asymptotic";
}

double chi_square_sf(double x, double dof) {
  if (!(dof > 0.0)) throw Error(ErrorCode::InvalidArgument, "chi-square needs dof > 0");
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(0.5 * dof, 0.5 * x);
}

namespace {

// Exact permutation distribution of sum_j R_j^2 under the null that each
// block's ranks are assigned to treatments uniformly at random. Ranks are
// doubled so half ranks from ties stay integral.
double exact_upper_tail(const std::vector<std::vector<int>>& doubled_ranks, std::int64_t observed) {
  const std::size_t k = doubled_ranks.front().size();
  // Sorted doubled rank sums, one byte each (sums stay below 2*k*b <= 256).
  using Key = std::uint64_t;
  auto pack = [k](const std::array<int, 8>& v) {
    Key key = 0;
    for (std::size_t j = 0; j < k; ++j) key = (key << 8) | static_cast<Key>(v[j]);
    return key;
  };
  auto unpack = [k](Key key) {
    std::array<int, 8> v{};
    for (std::size_t j = k; j-- > 0; key >>= 8) v[j] = static_cast<int>(key & 0xff);
    return v;
  };

  std::unordered_map<Key, double> dist{{0, 1.0}};
  for (const auto& block : doubled_ranks) {
    std::vector<int> perm = block;
    std::sort(perm.begin(), perm.end());
    std::vector<std::vector<int>> arrangements;
    do {
      arrangements.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    const double w = 1.0 / static_cast<double>(arrangements.size());

    std::unordered_map<Key, double> next;
    next.reserve(dist.size() * 4);
    for (const auto& [key, prob] : dist) {
      const auto state = unpack(key);
      for (const auto& a : arrangements) {
        std::array<int, 8> s = state;
        for (std::size_t j = 0; j < k; ++j) s[j] += a[j];
        // Statistic and transitions are symmetric in treatment labels.
        std::sort(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k));
        next[pack(s)] += prob * w;
      }
    }
    dist = std::move(next);
  }
  double tail = 0.0;
  for (const auto& [key, prob] : dist) {
    const auto state = unpack(key);
    std::int64_t ss = 0;
    for (std::size_t j = 0; j < k; ++j) ss += static_cast<std::int64_t>(state[j]) * state[j];
    if (ss >= observed) tail += prob;
  }
  return std::min(1.0, tail);
}

}  // namespace

FriedmanResult friedman_test(const std::vector<std::vector<double>>& data) {
  if (data.empty()) throw Error(ErrorCode::TooFewBlocks, "no blocks");
  const std::size_t k = data.front().size();
  for (const auto& row : data) {
    if (row.size() != k) throw Error(ErrorCode::InvalidArgument, "blocks have different treatment counts");
  }
  if (k < 2) throw Error(ErrorCode::TooFewTreatments, std::to_string(k) + " treatment(s)");

  FriedmanResult r;
  std::vector<std::vector<double>> ranks;
  for (const auto& row : data) {
    if (std::any_of(row.begin(), row.end(), [](double v) { return std::isnan(v); })) {
      ++r.dropped_blocks;
      continue;
    }
    ranks.push_back(rank_with_ties(row));
  }
  const std::size_t b = ranks.size();
  if (b < 2) throw Error(ErrorCode::TooFewBlocks, std::to_string(b) + " complete block(s)");

  r.blocks = b;
  r.dof = static_cast<int>(k) - 1;
  r.rank_sums.assign(k, 0.0);
  double ties = 0.0;
  for (const auto& row : ranks) {
    for (std::size_t j = 0; j < k; ++j) r.rank_sums[j] += row[j];
    ties += tie_term(row);
  }
  const double kd = static_cast<double>(k), bd = static_cast<double>(b);
  r.mean_ranks.resize(k);
  double dev = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    r.mean_ranks[j] = r.rank_sums[j] / bd;
    const double d = r.mean_ranks[j] - (kd + 1.0) / 2.0;
    dev += d * d;
  }
  r.tie_correction = 1.0 - ties / (bd * kd * (kd * kd - 1.0));
  if (r.tie_correction <= 1e-12) {
    // Every block fully tied: no evidence of any treatment effect.
    r.chi_square = 0.0;
    r.p_asymptotic = 1.0;
    r.p_value = 1.0;
    r.method = b <= kExactFriedmanMaxBlocks && k <= kExactFriedmanMaxTreatments ? PValueMethod::Exact
                                                                                 : PValueMethod::Asymptotic;
    return r;
  }
  r.chi_square = 12.0 * bd / (kd * (kd + 1.0)) * dev / r.tie_correction;
  r.p_asymptotic = chi_square_sf(r.chi_square, r.dof);
  r.p_value = r.p_asymptotic;

  if (b <= kExactFriedmanMaxBlocks && k <= kExactFriedmanMaxTreatments) {
    std::vector<std::vector<int>> doubled;
    std::vector<std::int64_t> sums(k, 0);
    for (const auto& row : ranks) {
      std::vector<int> d(k);
      for (std::size_t j = 0; j < k; ++j) {
        d[j] = static_cast<int>(std::lround(2.0 * row[j]));
        sums[j] += d[j];
      }
      doubled.push_back(std::move(d));
    }
    std::int64_t observed = 0;
    for (auto s : sums) observed += s * s;
    r.p_value = exact_upper_tail(doubled, observed);
    r.method = PValueMethod::Exact;
  }
  return r;
}

}  // namespace salbench::stats
