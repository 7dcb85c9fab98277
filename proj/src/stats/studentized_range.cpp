#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "salbench/error.hpp"
#include "salbench/stats.hpp"

namespace salbench::stats {

namespace {

using boost::math::quadrature::gauss_kronrod;

double phi(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }
double big_phi(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// P(range of k standard normals <= w), integrating over the sample maximum.
double normal_range_cdf(double w, int k) {
  if (w <= 0.0) return 0.0;
  auto f = [w, k](double z) { return k * phi(z) * std::pow(big_phi(z) - big_phi(z - w), k - 1); };
  const double v = gauss_kronrod<double, 61>::integrate(f, -9.0, 9.0, 15, 1e-12);
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

double studentized_range_cdf(double q, int k, double dof) {
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "studentized range needs k >= 2");
  if (!(dof >= 1.0)) throw Error(ErrorCode::InvalidArgument, "studentized range needs dof >= 1");
  if (!(q > 0.0)) return 0.0;
  if (std::isinf(q)) return 1.0;
  if (std::isinf(dof) || dof > 1e6) return normal_range_cdf(q, k);

  // Mix the normal range over s = sqrt(chi2_dof / dof).
  const double half = 0.5 * dof;
  const double log_norm = std::log(2.0) + half * std::log(half) - std::lgamma(half);
  auto density = [=](double s) {
    if (s <= 0.0) return 0.0;
    return std::exp(log_norm + (dof - 1.0) * std::log(s) - half * s * s);
  };
  const double spread = 1.0 / std::sqrt(2.0 * dof);
  const double lo = std::max(0.0, 1.0 - 12.0 * spread);
  const double hi = 1.0 + 14.0 * spread;
  auto f = [&](double s) {
    const double d = density(s);
    return d > 0.0 ? d * normal_range_cdf(q * s, k) : 0.0;
  };
  const double v = gauss_kronrod<double, 61>::integrate(f, lo, hi, 12, 1e-11);
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace salbench::stats
