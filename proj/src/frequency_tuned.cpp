#include <algorithm>
#include <cmath>

#include "salbench/error.hpp"
#include "salbench/kernels.hpp"
#include "salbench/models.hpp"

namespace salbench::models {

SaliencyMap frequency_tuned(const corpus::ImageRecord& image, const FrequencyTunedOptions& options) {
  if (!(options.blur_radius >= 0.0)) throw Error(ErrorCode::InvalidArgument, "blur_radius must be >= 0");
  const kernels::LabImage lab = kernels::parallel::rgb_to_lab(image.pixels);
  // Centre each channel first so a constant image blurs to exact zeros.
  auto centred = [&](const Map& c) {
    Map d = c;
    if (std::all_of(c.values().begin(), c.values().end(), [&](double v) { return v == c[0]; })) {
      return Map(c.width(), c.height(), 0.0);
    }
    const double m = kernels::parallel::moments(c).mean;
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= m;
    return kernels::parallel::blur(d, options.blur_radius);
  };
  const Map bl = centred(lab.l), ba = centred(lab.a), bb = centred(lab.b);

  Map out(image.width(), image.height());
  const long n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const double dl = bl[i], da = ba[i], db = bb[i];
    out[i] = std::sqrt(dl * dl + da * da + db * db);
  }
  return {"FT", std::move(out)};
}

}  // namespace salbench::models
