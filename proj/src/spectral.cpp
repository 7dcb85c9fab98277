#include <algorithm>
#include <cmath>
#include <vector>

#include <opencv2/core.hpp>

#include "cv_bridge.hpp"
#include "salbench/error.hpp"
#include "salbench/image.hpp"
#include "salbench/kernels.hpp"
#include "salbench/models.hpp"

namespace salbench::models {

namespace {

enum class Spectrum { Residual, PhaseOnly };

Dims working_dims(Dims image, int working_size) {
  const double scale = static_cast<double>(working_size) / std::max(image.width, image.height);
  return {std::max(1, static_cast<int>(std::lround(image.width * scale))),
          std::max(1, static_cast<int>(std::lround(image.height * scale)))};
}

// Box average with circular wrap; the log-amplitude spectrum is periodic.
Map circular_box(const Map& in, int size) {
  const int r = size / 2, w = in.width(), h = in.height();
  const double norm = 1.0 / (size * size);
  Map out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int dy = -r; dy <= r; ++dy) {
        const int yy = ((y + dy) % h + h) % h;
        for (int dx = -r; dx <= r; ++dx) acc += in.at(((x + dx) % w + w) % w, yy);
      }
      out.at(x, y) = acc * norm;
    }
  }
  return out;
}

SaliencyMap spectral_map(const corpus::ImageRecord& image, const SpectralOptions& opt, Spectrum kind,
                         const char* model) {
  if (opt.working_size < 16) throw Error(ErrorCode::InvalidArgument, "working_size must be >= 16");
  if (opt.box_size < 1 || opt.box_size % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument, "box_size must be odd and positive");
  }
  const Dims work = working_dims(image.dims(), opt.working_size);
  const Map gray = to_gray(image.pixels);
  const auto [lo, hi] = std::minmax_element(gray.values().begin(), gray.values().end());
  if (*hi - *lo <= 1e-12) {
    if (opt.error_on_degenerate) throw Error(ErrorCode::DegenerateImage, "image '" + image.id + "' is constant");
    return {model, Map(image.width(), image.height(), 0.0)};
  }
  const Map small = resize(gray, work, Interpolation::Area);

  cv::Mat planes[] = {detail::to_mat(small), cv::Mat::zeros(work.height, work.width, CV_64F)};
  cv::Mat complex, spectrum;
  cv::merge(planes, 2, complex);
  cv::dft(complex, spectrum, cv::DFT_COMPLEX_OUTPUT);

  Map log_amp(work.width, work.height), phase(work.width, work.height);
  for (int y = 0; y < work.height; ++y) {
    const auto* row = spectrum.ptr<cv::Vec2d>(y);
    for (int x = 0; x < work.width; ++x) {
      log_amp.at(x, y) = std::log(std::max(std::hypot(row[x][0], row[x][1]), 1e-12));
      phase.at(x, y) = std::atan2(row[x][1], row[x][0]);
    }
  }

  Map amplitude(work.width, work.height, 1.0);
  if (kind == Spectrum::Residual) {
    const Map avg = circular_box(log_amp, opt.box_size);
    for (std::size_t i = 0; i < amplitude.size(); ++i) amplitude[i] = std::exp(log_amp[i] - avg[i]);
  }
  for (int y = 0; y < work.height; ++y) {
    auto* row = spectrum.ptr<cv::Vec2d>(y);
    for (int x = 0; x < work.width; ++x) {
      const double a = amplitude.at(x, y), p = phase.at(x, y);
      row[x] = cv::Vec2d(a * std::cos(p), a * std::sin(p));
    }
  }
  cv::Mat back;
  cv::dft(spectrum, back, cv::DFT_INVERSE | cv::DFT_SCALE | cv::DFT_COMPLEX_OUTPUT);

  Map energy(work.width, work.height);
  for (int y = 0; y < work.height; ++y) {
    const auto* row = back.ptr<cv::Vec2d>(y);
    for (int x = 0; x < work.width; ++x) energy.at(x, y) = row[x][0] * row[x][0] + row[x][1] * row[x][1];
  }
  energy = kernels::parallel::blur(energy, opt.smoothing_frac * opt.working_size);
  return {model, resize(energy, image.dims(), Interpolation::Linear)};
}

}  // namespace

SaliencyMap spectral_residual(const corpus::ImageRecord& image, const SpectralOptions& options) {
  return spectral_map(image, options, Spectrum::Residual, "SR");
}

SaliencyMap phase_fourier(const corpus::ImageRecord& image, const SpectralOptions& options) {
  return spectral_map(image, options, Spectrum::PhaseOnly, "PFT");
}

}  // namespace salbench::models
