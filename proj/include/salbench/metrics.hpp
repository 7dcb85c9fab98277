#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "salbench/corpus.hpp"
#include "salbench/grid.hpp"

namespace salbench::metrics {

enum class MetricId { NSS, AUROC };
enum class GtKind { Fixations, Regions };

std::string_view to_string(MetricId m) noexcept;
std::string_view to_string(GtKind g) noexcept;
MetricId parse_metric(std::string_view text);
GtKind parse_gt_kind(std::string_view text);

using GroundTruth = std::variant<const corpus::FixationSet*, const corpus::RegionMask*>;

GtKind kind_of(const GroundTruth& gt) noexcept;

struct MetricScore {
  MetricId metric = MetricId::NSS;
  GtKind gt = GtKind::Fixations;
  double value = 0.0;
  int reps = 1;
  std::uint64_t seed = 0;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

/// Monotone staircase from (0,0) to (1,1).
using RocCurve = std::vector<RocPoint>;

/// Threshold sweep over every distinct value in pos ∪ neg; a sample counts
/// as detected when its value is >= the threshold.
RocCurve roc_curve(std::span<const double> positives, std::span<const double> negatives);
double trapezoid_auc(const RocCurve& curve);

/// Mean of the standardized map over fixations (duplicates kept) or over every
/// mask pixel.
MetricScore nss(const Map& map, const GroundTruth& gt);

inline constexpr int kDefaultReps = 100;
inline constexpr std::size_t kRegionPositiveCap = 10000;
inline constexpr std::uint64_t kMaxEnumeration = 5'000'000;

enum class AurocMode {
  Sampled,    // `reps` random negative sets
  Enumerate,  // every negative set of the right size (small inputs only)
};

struct AurocOptions {
  int reps = kDefaultReps;
  std::uint64_t seed = 0;
  AurocMode mode = AurocMode::Sampled;
};

/// Positives: deduplicated fixation pixels, or mask pixels capped at
/// kRegionPositiveCap by seeded subsampling. Negatives: an equal-size uniform
/// sample without replacement from the remaining pixels.
MetricScore auroc(const Map& map, const GroundTruth& gt, const AurocOptions& options = {});

/// Pixel indices (raster order) of the AUROC positives before any capping.
std::vector<std::uint32_t> positive_pixels(Dims dims, const GroundTruth& gt);

}  // namespace salbench::metrics
