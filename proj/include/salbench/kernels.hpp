#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version (used by the
// library) and a serial reference kept for testing and benchmarking. The two
// produce bit-identical results: reductions are accumulated per row and
// combined in row order regardless of the thread count.

#include <cstdint>
#include <span>
#include <vector>

#include "salbench/grid.hpp"
#include "salbench/image.hpp"

namespace salbench::kernels {

struct Moments {
  double mean = 0.0;
  double std = 0.0;  // population
};

struct LabImage {
  Map l, a, b;
};

/// Normalized sampled Gaussian, radius ceil(4 sigma). sigma = 0 gives {1}.
std::vector<double> gaussian_taps(double sigma);

/// Half-sample symmetric reflection (cba|abc|cba) into [0, n).
int reflect_index(int i, int n) noexcept;

/// Positives and the negative pool for the sampled ROC protocol.
struct RocSampling {
  std::span<const double> positives_sorted;  // ascending
  std::span<const double> map_values;
  std::span<const std::uint32_t> negative_pool;  // pixel indices
  std::uint64_t seed = 0;
};

/// Area under the threshold-sweep ROC of two ascending samples, as the exact
/// rational numerator / (2 * |pos| * |neg|).
std::int64_t auc_numerator(std::span<const double> pos_sorted, std::span<const double> neg_sorted);

namespace serial {
Map blur(const Map& map, double sigma);
Moments moments(const Map& map);
LabImage rgb_to_lab(const RgbImage& image);
/// AUC of every repetition; repetition r draws its negatives with
/// derive_seed(seed, r).
std::vector<double> sampled_auc(const RocSampling& sampling, int reps);
}  // namespace serial

namespace parallel {
Map blur(const Map& map, double sigma);
Moments moments(const Map& map);
LabImage rgb_to_lab(const RgbImage& image);
std::vector<double> sampled_auc(const RocSampling& sampling, int reps);
}  // namespace parallel

}  // namespace salbench::kernels
