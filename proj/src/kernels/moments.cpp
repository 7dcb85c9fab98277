#include <cmath>
#include <vector>

#include "salbench/kernels.hpp"

namespace salbench::kernels {

namespace serial {

Moments moments(const Map& map) {
  const double n = static_cast<double>(map.size());
  double total = 0.0;
  for (int y = 0; y < map.height(); ++y) {
    double row = 0.0;
    for (double v : map.row(y)) row += v;
    total += row;
  }
  const double mean = total / n;
  double ss = 0.0;
  for (int y = 0; y < map.height(); ++y) {
    double row = 0.0;
    for (double v : map.row(y)) row += (v - mean) * (v - mean);
    ss += row;
  }
  return {mean, std::sqrt(ss / n)};
}

}  // namespace serial

namespace parallel {

Moments moments(const Map& map) {
  const int h = map.height();
  const double n = static_cast<double>(map.size());
  std::vector<double> partial(h);
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    double row = 0.0;
    for (double v : map.row(y)) row += v;
    partial[y] = row;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  const double mean = total / n;
#pragma omp parallel for schedule(static)
  for (int y = 0; y < h; ++y) {
    double row = 0.0;
    for (double v : map.row(y)) row += (v - mean) * (v - mean);
    partial[y] = row;
  }
  double ss = 0.0;
  for (double p : partial) ss += p;
  return {mean, std::sqrt(ss / n)};
}

}  // namespace parallel

}  // namespace salbench::kernels
