#include "salbench/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "salbench/error.hpp"
#include "salbench/kernels.hpp"
#include "salbench/preprocess.hpp"
#include "salbench/rng.hpp"

namespace salbench::metrics {

std::string_view to_string(MetricId m) noexcept { return m == MetricId::NSS ? "NSS" : "AUROC"; }
std::string_view to_string(GtKind g) noexcept { return g == GtKind::Fixations ? "fixations" : "regions"; }

MetricId parse_metric(std::string_view text) {
  if (text == "NSS" || text == "nss") return MetricId::NSS;
  if (text == "AUROC" || text == "auroc" || text == "AUC") return MetricId::AUROC;
  throw Error(ErrorCode::InvalidArgument, "unknown metric '" + std::string(text) + "'");
}

GtKind parse_gt_kind(std::string_view text) {
  if (text == "fixations" || text == "fix") return GtKind::Fixations;
  if (text == "regions" || text == "reg" || text == "zones") return GtKind::Regions;
  throw Error(ErrorCode::InvalidArgument, "unknown ground truth kind '" + std::string(text) + "'");
}

GtKind kind_of(const GroundTruth& gt) noexcept {
  return std::holds_alternative<const corpus::FixationSet*>(gt) ? GtKind::Fixations : GtKind::Regions;
}

RocCurve roc_curve(std::span<const double> positives, std::span<const double> negatives) {
  if (positives.empty() || negatives.empty()) {
    throw Error(ErrorCode::EmptyGroundTruth, "ROC needs at least one positive and one negative");
  }
  std::vector<double> pos(positives.begin(), positives.end()), neg(negatives.begin(), negatives.end());
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  RocCurve curve{{0.0, 0.0}};
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(pos.size()) - 1;
  std::ptrdiff_t j = static_cast<std::ptrdiff_t>(neg.size()) - 1;
  std::size_t tp = 0, fp = 0;
  while (i >= 0 || j >= 0) {
    const double t = i < 0 ? neg[j] : j < 0 ? pos[i] : std::max(pos[i], neg[j]);
    while (i >= 0 && pos[i] == t) --i, ++tp;
    while (j >= 0 && neg[j] == t) --j, ++fp;
    curve.push_back({static_cast<double>(fp) / neg.size(), static_cast<double>(tp) / pos.size()});
  }
  curve.back() = {1.0, 1.0};
  return curve;
}

double trapezoid_auc(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t k = 1; k < curve.size(); ++k) {
    area += (curve[k].fpr - curve[k - 1].fpr) * (curve[k].tpr + curve[k - 1].tpr) * 0.5;
  }
  return area;
}

namespace {

void check_dims(const Map& map, const GroundTruth& gt) {
  if (const auto* region = std::get_if<const corpus::RegionMask*>(&gt)) {
    if (dims_of((*region)->mask) != dims_of(map)) {
      throw Error(ErrorCode::DimensionMismatch, "region mask and map differ in size");
    }
  } else {
    for (const auto& p : std::get<const corpus::FixationSet*>(gt)->points) {
      if (p.x < 0 || p.y < 0 || p.x >= map.width() || p.y >= map.height()) {
        throw Error(ErrorCode::OutOfBounds, "fixation outside the map");
      }
    }
  }
}

}  // namespace

MetricScore nss(const Map& map, const GroundTruth& gt) {
  check_dims(map, gt);
  const GtKind kind = kind_of(gt);
  const auto stats = preprocess::nondegenerate_stats(map);

  double sum = 0.0;
  std::size_t n = 0;
  if (kind == GtKind::Fixations) {
    for (const auto& p : std::get<const corpus::FixationSet*>(gt)->points) {
      sum += (map.at(p.x, p.y) - stats.mean) / stats.std;
      ++n;
    }
  } else {
    const auto& mask = std::get<const corpus::RegionMask*>(gt)->mask;
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (mask[i]) {
        sum += (map[i] - stats.mean) / stats.std;
        ++n;
      }
    }
  }
  if (n == 0) throw Error(ErrorCode::EmptyGroundTruth, "no positive locations");
  return {MetricId::NSS, kind, sum / static_cast<double>(n), 1, 0};
}

std::vector<std::uint32_t> positive_pixels(Dims dims, const GroundTruth& gt) {
  std::vector<std::uint32_t> idx;
  if (const auto* fix = std::get_if<const corpus::FixationSet*>(&gt)) {
    for (const auto& p : (*fix)->points) idx.push_back(static_cast<std::uint32_t>(p.y * dims.width + p.x));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  } else {
    const auto& mask = std::get<const corpus::RegionMask*>(gt)->mask;
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) idx.push_back(static_cast<std::uint32_t>(i));
  }
  return idx;
}

namespace {

// Exact mean AUC over every size-k subset of the negative pool.
double enumerate_auc(std::span<const double> pos_sorted, std::span<const double> pool_values,
                     std::uint64_t& subsets) {
  const std::size_t m = pool_values.size(), k = pos_sorted.size();
  // C(m, k) with an overflow guard.
  long double combos = 1;
  for (std::size_t i = 0; i < k; ++i) combos = combos * (m - i) / (i + 1);
  if (combos > static_cast<long double>(kMaxEnumeration)) {
    throw Error(ErrorCode::EnumerationTooLarge, "C(" + std::to_string(m) + "," + std::to_string(k) + ") subsets");
  }
  std::vector<std::size_t> choice(k);
  std::iota(choice.begin(), choice.end(), 0);
  std::vector<double> neg(k);
  long double total = 0;
  subsets = 0;
  while (true) {
    for (std::size_t i = 0; i < k; ++i) neg[i] = pool_values[choice[i]];
    std::sort(neg.begin(), neg.end());
    total += kernels::auc_numerator(pos_sorted, neg);
    ++subsets;
    // Next combination in lexicographic order.
    std::ptrdiff_t i = static_cast<std::ptrdiff_t>(k) - 1;
    while (i >= 0 && choice[i] == m - k + i) --i;
    if (i < 0) break;
    ++choice[i];
    for (std::size_t j = i + 1; j < k; ++j) choice[j] = choice[j - 1] + 1;
  }
  const long double denom = 2.0L * k * k * subsets;
  return static_cast<double>(total / denom);
}

}  // namespace

MetricScore auroc(const Map& map, const GroundTruth& gt, const AurocOptions& options) {
  check_dims(map, gt);
  const GtKind kind = kind_of(gt);
  if (options.mode == AurocMode::Sampled && options.reps < 1) {
    throw Error(ErrorCode::InvalidArgument, "reps must be >= 1");
  }
  std::vector<std::uint32_t> positives = positive_pixels(dims_of(map), gt);
  if (positives.empty()) throw Error(ErrorCode::EmptyGroundTruth, "no positive locations");

  // Negative pool: every pixel not in the full positive set, raster order.
  std::vector<std::uint32_t> pool;
  pool.reserve(map.size() - positives.size());
  {
    std::size_t p = 0;
    for (std::uint32_t i = 0; i < map.size(); ++i) {
      if (p < positives.size() && positives[p] == i) {
        ++p;
        continue;
      }
      pool.push_back(i);
    }
  }

  if (kind == GtKind::Regions && positives.size() > kRegionPositiveCap) {
    Rng rng(derive_seed(options.seed, {"region-positives"}));
    for (std::size_t k = 0; k < kRegionPositiveCap; ++k) {
      std::swap(positives[k], positives[k + uniform_index(rng, positives.size() - k)]);
    }
    positives.resize(kRegionPositiveCap);
  }
  if (pool.size() < positives.size()) {
    throw Error(ErrorCode::TooFewNegatives, std::to_string(pool.size()) + " negatives for " +
                                                std::to_string(positives.size()) + " positives");
  }

  std::vector<double> pos_values(positives.size());
  for (std::size_t k = 0; k < positives.size(); ++k) pos_values[k] = map[positives[k]];
  std::sort(pos_values.begin(), pos_values.end());

  MetricScore score{MetricId::AUROC, kind, 0.0, options.reps, options.seed};
  if (options.mode == AurocMode::Enumerate) {
    std::vector<double> pool_values(pool.size());
    for (std::size_t k = 0; k < pool.size(); ++k) pool_values[k] = map[pool[k]];
    std::uint64_t subsets = 0;
    score.value = enumerate_auc(pos_values, pool_values, subsets);
    score.reps = static_cast<int>(subsets);
    return score;
  }

  const kernels::RocSampling sampling{pos_values, map.values(), pool, options.seed};
  const auto per_rep = kernels::parallel::sampled_auc(sampling, options.reps);
  double sum = 0.0;
  for (double a : per_rep) sum += a;
  score.value = sum / options.reps;
  return score;
}

}  // namespace salbench::metrics
