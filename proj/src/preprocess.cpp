#include "salbench/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "salbench/error.hpp"
#include "salbench/image.hpp"
#include "salbench/kernels.hpp"

namespace salbench::preprocess {

ResolvedConfig resolve(const PreprocessConfig& config, Dims image_dims) {
  if (!(config.blur_sigma >= 0.0)) throw Error(ErrorCode::InvalidArgument, "blur_sigma must be >= 0");
  ResolvedConfig r;
  r.target = config.target_dims.value_or(image_dims);
  r.sigma_px = config.blur_sigma * r.target.width;
  r.border_px = config.border_cut.value_or(
      static_cast<int>(std::lround(kDefaultBorderFraction * std::min(r.target.width, r.target.height))));
  return r;
}

MapStats map_stats(const Map& map) {
  const auto m = kernels::parallel::moments(map);
  return {m.mean, m.std};
}

MapStats nondegenerate_stats(const Map& map) {
  if (map.empty()) throw Error(ErrorCode::DegenerateMap, "empty map");
  const MapStats stats = map_stats(map);
  double max_abs = 0.0;
  for (double v : map.values()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteValue, "map contains a non-finite value");
    max_abs = std::max(max_abs, std::abs(v));
  }
  // Rounding leaves a constant map with std ~ 1e-16 * |value|.
  if (!(stats.std > 1e-12 * max_abs)) throw Error(ErrorCode::DegenerateMap, "map has zero variance");
  return stats;
}

std::pair<Map, MapStats> standardize(const Map& map) {
  const MapStats stats = nondegenerate_stats(map);
  Map out(map.width(), map.height());
  const long n = static_cast<long>(map.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = (map[i] - stats.mean) / stats.std;
  return {std::move(out), stats};
}

Map blur(const Map& map, double sigma) { return kernels::parallel::blur(map, sigma); }

Map border_cut(const Map& map, int width) {
  if (width < 0) throw Error(ErrorCode::InvalidArgument, "border width must be >= 0");
  if (width == 0) return map;
  if (2 * width >= std::min(map.width(), map.height())) {
    throw Error(ErrorCode::WidthTooLarge, std::to_string(width) + " px on a " + std::to_string(map.width()) +
                                              "x" + std::to_string(map.height()) + " map");
  }
  const double lo = *std::min_element(map.values().begin(), map.values().end());
  Map out = map;
  for (int y = 0; y < out.height(); ++y) {
    const bool edge_row = y < width || y >= out.height() - width;
    for (int x = 0; x < out.width(); ++x) {
      if (edge_row || x < width || x >= out.width() - width) out.at(x, y) = lo;
    }
  }
  return out;
}

Map apply(const Map& map, const ResolvedConfig& config) {
  Map m = resize(map, config.target, Interpolation::Linear);
  m = blur(m, config.sigma_px);
  m = border_cut(m, config.border_px);
  return standardize(m).first;
}

}  // namespace salbench::preprocess
