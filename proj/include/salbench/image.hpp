#pragma once

#include <array>
#include <cstdint>
#include <filesystem>

#include "salbench/grid.hpp"

namespace salbench {

using Rgb = std::array<std::uint8_t, 3>;
using RgbImage = Grid<Rgb>;
using Mask = Grid<std::uint8_t>;

// PNG I/O. Grayscale images are expanded to RGB on read.
RgbImage read_rgb_png(const std::filesystem::path& path);
void write_rgb_png(const std::filesystem::path& path, const RgbImage& image);

/// Reads any 8/16-bit grayscale PNG; `max_value` receives 255 or 65535.
Map read_gray_png(const std::filesystem::path& path, double* max_value = nullptr);
void write_mask_png(const std::filesystem::path& path, const Mask& mask);

/// Rec. 601 luma in [0, 1].
Map to_gray(const RgbImage& image);

enum class Interpolation { Area, Linear };
Map resize(const Map& map, Dims target, Interpolation method = Interpolation::Linear);

}  // namespace salbench
