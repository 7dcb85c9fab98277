#include <cmath>

#include "salbench/error.hpp"
#include "salbench/kernels.hpp"

namespace salbench::kernels {

std::vector<double> gaussian_taps(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::InvalidArgument, "blur sigma must be finite and >= 0");
  }
  if (sigma == 0.0) return {1.0};
  const int radius = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) {
    taps[k + radius] = std::exp(-0.5 * (k * k) / (sigma * sigma));
    sum += taps[k + radius];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

int reflect_index(int i, int n) noexcept {
  const int period = 2 * n;
  int m = i % period;
  if (m < 0) m += period;
  return m < n ? m : period - 1 - m;
}

namespace {

void horizontal_row(const Map& in, Map& out, int y, const std::vector<double>& taps) {
  const int radius = static_cast<int>(taps.size() / 2);
  const int w = in.width();
  const auto src = in.row(y);
  auto dst = out.row(y);
  for (int x = 0; x < w; ++x) {
    double acc = 0.0;
    for (int k = -radius; k <= radius; ++k) acc += taps[k + radius] * src[reflect_index(x + k, w)];
    dst[x] = acc;
  }
}

}  // namespace

namespace serial {

Map blur(const Map& map, double sigma) {
  const auto taps = gaussian_taps(sigma);
  if (taps.size() == 1) return map;
  const int radius = static_cast<int>(taps.size() / 2);
  Map tmp(map.width(), map.height());
  for (int y = 0; y < map.height(); ++y) horizontal_row(map, tmp, y, taps);
  // Column-major walk; per-pixel summation order matches the parallel kernel.
  Map out(map.width(), map.height());
  for (int x = 0; x < map.width(); ++x) {
    for (int y = 0; y < map.height(); ++y) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) {
        acc += taps[k + radius] * tmp.at(x, reflect_index(y + k, map.height()));
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

}  // namespace serial

namespace parallel {

Map blur(const Map& map, double sigma) {
  const auto taps = gaussian_taps(sigma);
  if (taps.size() == 1) return map;
  const int radius = static_cast<int>(taps.size() / 2);
  const int w = map.width(), h = map.height();
  Map tmp(w, h);
  Map out(w, h, 0.0);
#pragma omp parallel
  {
#pragma omp for schedule(static)
    for (int y = 0; y < h; ++y) horizontal_row(map, tmp, y, taps);
#pragma omp for schedule(static)
    for (int y = 0; y < h; ++y) {
      auto dst = out.row(y);
      for (int k = -radius; k <= radius; ++k) {
        const double t = taps[k + radius];
        const auto src = tmp.row(reflect_index(y + k, h));
        for (int x = 0; x < w; ++x) dst[x] += t * src[x];
      }
    }
  }
  return out;
}

}  // namespace parallel

}  // namespace salbench::kernels
