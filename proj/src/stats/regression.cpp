#include <algorithm>
#include <cmath>

#include "salbench/error.hpp"
#include "salbench/stats.hpp"

namespace salbench::stats {

TrendFit ols_trend(std::span<const double> x, std::span<const double> y, std::span<const std::string> labels,
                   std::span<const std::string> exclude) {
  if (x.size() != y.size()) throw Error(ErrorCode::InvalidArgument, "x and y differ in length");
  if (!labels.empty() && labels.size() != x.size()) {
    throw Error(ErrorCode::InvalidArgument, "labels and points differ in length");
  }
  TrendFit fit;
  fit.fitted.assign(x.size(), true);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!labels.empty() && std::find(exclude.begin(), exclude.end(), labels[i]) != exclude.end()) {
      fit.fitted[i] = false;
      if (std::find(fit.excluded.begin(), fit.excluded.end(), labels[i]) == fit.excluded.end()) {
        fit.excluded.push_back(labels[i]);
      }
    } else if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      fit.fitted[i] = false;
    }
  }

  double sx = 0.0, sy = 0.0, n = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!fit.fitted[i]) continue;
    sx += x[i];
    sy += y[i];
    n += 1.0;
  }
  if (n < 2.0) throw Error(ErrorCode::TooFewPoints, "need at least two fitted points");
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!fit.fitted[i]) continue;
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::TooFewPoints, "all fitted x values are equal");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.points_fitted = static_cast<std::size_t>(n);
  fit.residuals.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) fit.residuals[i] = y[i] - (fit.intercept + fit.slope * x[i]);
  return fit;
}

}  // namespace salbench::stats
