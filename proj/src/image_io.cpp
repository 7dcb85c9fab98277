#include <algorithm>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "cv_bridge.hpp"
#include "salbench/error.hpp"
#include "salbench/image.hpp"

namespace salbench {

namespace {

cv::Mat read_any(const std::filesystem::path& path, int flags) {
  if (!std::filesystem::exists(path)) {
    throw Error(ErrorCode::MissingFile, path.string());
  }
  cv::Mat m = cv::imread(path.string(), flags);
  if (m.empty()) {
    throw Error(ErrorCode::MalformedEntry, "cannot decode image " + path.string());
  }
  return m;
}

void write_png(const std::filesystem::path& path, const cv::Mat& m) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  if (!cv::imwrite(path.string(), m)) {
    throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  }
}

}  // namespace

RgbImage read_rgb_png(const std::filesystem::path& path) {
  cv::Mat bgr = read_any(path, cv::IMREAD_COLOR);
  RgbImage out(bgr.cols, bgr.rows);
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* src = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x) {
      out.at(x, y) = {src[x][2], src[x][1], src[x][0]};
    }
  }
  return out;
}

void write_rgb_png(const std::filesystem::path& path, const RgbImage& image) {
  cv::Mat bgr(image.height(), image.width(), CV_8UC3);
  for (int y = 0; y < image.height(); ++y) {
    auto* dst = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < image.width(); ++x) {
      const Rgb& p = image.at(x, y);
      dst[x] = cv::Vec3b(p[2], p[1], p[0]);
    }
  }
  write_png(path, bgr);
}

Map read_gray_png(const std::filesystem::path& path, double* max_value) {
  cv::Mat m = read_any(path, cv::IMREAD_ANYDEPTH | cv::IMREAD_GRAYSCALE);
  double depth_max = 255.0;
  if (m.depth() == CV_16U) {
    depth_max = 65535.0;
  } else if (m.depth() != CV_8U) {
    throw Error(ErrorCode::MalformedEntry, "unsupported bit depth in " + path.string());
  }
  if (max_value) *max_value = depth_max;
  cv::Mat d;
  m.convertTo(d, CV_64F);
  return detail::from_mat(d);
}

void write_mask_png(const std::filesystem::path& path, const Mask& mask) {
  cv::Mat m(mask.height(), mask.width(), CV_8U);
  for (int y = 0; y < mask.height(); ++y) {
    std::copy(mask.row(y).begin(), mask.row(y).end(), m.ptr<std::uint8_t>(y));
  }
  write_png(path, m);
}

Map to_gray(const RgbImage& image) {
  Map out(image.width(), image.height());
  for (std::size_t i = 0; i < image.size(); ++i) {
    const Rgb& p = image[i];
    out[i] = (0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2]) / 255.0;
  }
  return out;
}

Map resize(const Map& map, Dims target, Interpolation method) {
  if (target.width <= 0 || target.height <= 0) {
    throw Error(ErrorCode::InvalidArgument, "resize target must be positive");
  }
  if (dims_of(map) == target) return map;
  cv::Mat dst;
  cv::resize(detail::to_mat(map), dst, cv::Size(target.width, target.height), 0, 0,
             method == Interpolation::Area ? cv::INTER_AREA : cv::INTER_LINEAR);
  Map out = detail::from_mat(dst);
  // Linear interpolation of non-negative data can round to -0.0 or tiny
  // negatives; only clamp those.
  for (double& v : out.values()) {
    if (v < 0.0 && v > -1e-12) v = 0.0;
  }
  return out;
}

}  // namespace salbench
