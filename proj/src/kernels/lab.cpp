#include <cmath>

#include "salbench/kernels.hpp"

namespace salbench::kernels {

namespace {

// sRGB (D65) -> CIE L*a*b*.
constexpr double kXn = 0.95047, kYn = 1.0, kZn = 1.08883;

double linearize(std::uint8_t c) {
  const double v = c / 255.0;
  return v <= 0.04045 ? v / 12.92 : std::pow((v + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
  constexpr double delta = 6.0 / 29.0;
  return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

void convert_pixel(const Rgb& p, double& l, double& a, double& b) {
  const double r = linearize(p[0]), g = linearize(p[1]), bl = linearize(p[2]);
  const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * bl;
  const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * bl;
  const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * bl;
  const double fx = lab_f(x / kXn), fy = lab_f(y / kYn), fz = lab_f(z / kZn);
  l = 116.0 * fy - 16.0;
  a = 500.0 * (fx - fy);
  b = 200.0 * (fy - fz);
}

LabImage allocate(const RgbImage& image) {
  return {Map(image.width(), image.height()), Map(image.width(), image.height()),
          Map(image.width(), image.height())};
}

}  // namespace

namespace serial {

LabImage rgb_to_lab(const RgbImage& image) {
  LabImage lab = allocate(image);
  for (std::size_t i = 0; i < image.size(); ++i) convert_pixel(image[i], lab.l[i], lab.a[i], lab.b[i]);
  return lab;
}

}  // namespace serial

namespace parallel {

LabImage rgb_to_lab(const RgbImage& image) {
  LabImage lab = allocate(image);
  const long n = static_cast<long>(image.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) convert_pixel(image[i], lab.l[i], lab.a[i], lab.b[i]);
  return lab;
}

}  // namespace parallel

}  // namespace salbench::kernels
