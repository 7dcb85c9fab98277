#pragma once

#include <algorithm>

#include <opencv2/core.hpp>

#include "salbench/grid.hpp"

namespace salbench::detail {

inline cv::Mat to_mat(const Map& map) {
  cv::Mat m(map.height(), map.width(), CV_64F);
  for (int y = 0; y < map.height(); ++y) std::copy(map.row(y).begin(), map.row(y).end(), m.ptr<double>(y));
  return m;
}

inline Map from_mat(const cv::Mat& m) {
  Map out(m.cols, m.rows);
  for (int y = 0; y < m.rows; ++y) {
    const double* src = m.ptr<double>(y);
    std::copy(src, src + m.cols, out.row(y).begin());
  }
  return out;
}

}  // namespace salbench::detail
