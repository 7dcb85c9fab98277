#include <algorithm>
#include <cmath>

#include "salbench/error.hpp"
#include "salbench/stats.hpp"

namespace salbench::stats {

SymmetricEigen2 eigen_symmetric_2x2(double a, double b, double d) {
  SymmetricEigen2 e;
  const double half_tr = 0.5 * (a + d);
  const double disc = std::hypot(0.5 * (a - d), b);
  e.lambda1 = half_tr + disc;
  e.lambda2 = half_tr - disc;
  if (b == 0.0) {
    e.v1x = a >= d ? 1.0 : 0.0;
    e.v1y = a >= d ? 0.0 : 1.0;
    return e;
  }
  // Two equivalent forms; take the better-conditioned one.
  double vx = e.lambda1 - d, vy = b;
  const double ux = b, uy = e.lambda1 - a;
  if (std::hypot(ux, uy) > std::hypot(vx, vy)) vx = ux, vy = uy;
  const double norm = std::hypot(vx, vy);
  e.v1x = vx / norm;
  e.v1y = vy / norm;
  return e;
}

FusionReport pca_fuse(const std::vector<std::vector<double>>& columns) {
  if (columns.size() != 2) throw Error(ErrorCode::InvalidArgument, "metric fusion expects two columns");
  const std::size_t n = columns[0].size();
  if (columns[1].size() != n) throw Error(ErrorCode::InvalidArgument, "metric columns differ in length");
  if (n < 3) throw Error(ErrorCode::TooFewObservations, std::to_string(n) + " observation(s)");

  FusionReport f;
  std::vector<std::vector<double>> z(2, std::vector<double>(n));
  for (int c = 0; c < 2; ++c) {
    double sum = 0.0, max_abs = 0.0;
    for (double v : columns[c]) {
      if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteScore, "non-finite metric value");
      sum += v;
      max_abs = std::max(max_abs, std::abs(v));
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : columns[c]) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1));
    if (!(sd > 1e-12 * std::max(max_abs, 1e-300))) {
      throw Error(ErrorCode::ConstantMetricColumn, "metric column " + std::to_string(c) + " is constant");
    }
    f.column_means.push_back(mean);
    f.column_stds.push_back(sd);
    for (std::size_t i = 0; i < n; ++i) z[c][i] = (columns[c][i] - mean) / sd;
  }

  double cross = 0.0;
  for (std::size_t i = 0; i < n; ++i) cross += z[0][i] * z[1][i];
  f.correlation = std::clamp(cross / (n - 1), -1.0, 1.0);

  const auto eig = eigen_symmetric_2x2(1.0, f.correlation, 1.0);
  double lx = eig.v1x, ly = eig.v1y;
  // Orient so the fused score grows with the metrics; when the loadings have
  // opposite signs, the first metric decides.
  const double sum = lx + ly;
  if (sum < -1e-12 || (std::abs(sum) <= 1e-12 && lx < 0.0)) {
    lx = -lx;
    ly = -ly;
    f.flipped = true;
  }
  f.mixed_signs = (lx > 1e-12 && ly < -1e-12) || (lx < -1e-12 && ly > 1e-12);
  f.loadings = {lx, ly};
  f.eigenvalues = {eig.lambda1, std::max(eig.lambda2, 0.0)};
  f.explained_variance = 100.0 * f.eigenvalues[0] / (f.eigenvalues[0] + f.eigenvalues[1]);
  f.scores.resize(n);
  for (std::size_t i = 0; i < n; ++i) f.scores[i] = lx * z[0][i] + ly * z[1][i];
  return f;
}

}  // namespace salbench::stats
