#include <algorithm>

#include "salbench/kernels.hpp"
#include "salbench/rng.hpp"

namespace salbench::kernels {

std::int64_t auc_numerator(std::span<const double> pos, std::span<const double> neg) {
  // Sweep thresholds from the top; each distinct value is one step.
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(pos.size()) - 1;
  std::ptrdiff_t j = static_cast<std::ptrdiff_t>(neg.size()) - 1;
  std::int64_t tp = 0, num = 0;
  while (i >= 0 || j >= 0) {
    double t;
    if (i < 0) t = neg[j];
    else if (j < 0) t = pos[i];
    else t = std::max(pos[i], neg[j]);
    std::int64_t dp = 0, dn = 0;
    while (i >= 0 && pos[i] == t) --i, ++dp;
    while (j >= 0 && neg[j] == t) --j, ++dn;
    num += dn * (2 * tp + dp);
    tp += dp;
  }
  return num;
}

namespace {

double one_repetition(const RocSampling& s, int rep, std::vector<std::uint32_t>& pool,
                      std::vector<double>& negatives) {
  const std::size_t p = s.positives_sorted.size();
  std::copy(s.negative_pool.begin(), s.negative_pool.end(), pool.begin());
  Rng rng(derive_seed(s.seed, static_cast<std::uint64_t>(rep)));
  const std::size_t m = pool.size();
  for (std::size_t k = 0; k < p; ++k) {
    std::swap(pool[k], pool[k + uniform_index(rng, m - k)]);
    negatives[k] = s.map_values[pool[k]];
  }
  std::sort(negatives.begin(), negatives.end());
  const double denom = 2.0 * static_cast<double>(p) * static_cast<double>(p);
  return static_cast<double>(auc_numerator(s.positives_sorted, negatives)) / denom;
}

}  // namespace

namespace serial {

std::vector<double> sampled_auc(const RocSampling& s, int reps) {
  std::vector<double> out(reps);
  std::vector<std::uint32_t> pool(s.negative_pool.size());
  std::vector<double> negatives(s.positives_sorted.size());
  for (int r = 0; r < reps; ++r) out[r] = one_repetition(s, r, pool, negatives);
  return out;
}

}  // namespace serial

namespace parallel {

std::vector<double> sampled_auc(const RocSampling& s, int reps) {
  std::vector<double> out(reps);
#pragma omp parallel
  {
    std::vector<std::uint32_t> pool(s.negative_pool.size());
    std::vector<double> negatives(s.positives_sorted.size());
#pragma omp for schedule(static)
    for (int r = 0; r < reps; ++r) out[r] = one_repetition(s, r, pool, negatives);
  }
  return out;
}

}  // namespace parallel

}  // namespace salbench::kernels
