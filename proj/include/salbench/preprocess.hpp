#pragma once

#include <optional>
#include <string>
#include <utility>

#include "salbench/grid.hpp"

namespace salbench::preprocess {

struct MapStats {
  double mean = 0.0;
  double std = 0.0;
};

/// Fixed pipeline order: resize -> blur -> border_cut -> standardize.
struct PreprocessConfig {
  double blur_sigma = 0.03;            // fraction of image width
  std::optional<int> border_cut;       // pixels; default 4% of the smaller side
  std::optional<Dims> target_dims;     // default: ground-truth image dims
};

inline constexpr double kDefaultBorderFraction = 0.04;
inline constexpr const char* kPipelineOrder[] = {"resize", "blur", "border_cut", "standardize"};

/// Concrete parameters for one image.
struct ResolvedConfig {
  Dims target;
  double sigma_px = 0.0;
  int border_px = 0;
};

ResolvedConfig resolve(const PreprocessConfig& config, Dims image_dims);

MapStats map_stats(const Map& map);

/// map_stats, raising DegenerateMap when the variance vanishes.
MapStats nondegenerate_stats(const Map& map);

/// Zero mean, unit population std. Throws DegenerateMap for constant maps.
std::pair<Map, MapStats> standardize(const Map& map);

/// Gaussian, half-sample reflective boundary. sigma in pixels; 0 is identity.
Map blur(const Map& map, double sigma);

/// Sets a frame of `width` pixels to the map minimum; dims are unchanged.
Map border_cut(const Map& map, int width);

Map apply(const Map& map, const ResolvedConfig& config);

}  // namespace salbench::preprocess
