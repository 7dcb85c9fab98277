#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "salbench/image.hpp"

namespace salbench::corpus {

enum class CategoryLabel { Large, Medium, Small, Uncategorized };

std::string_view to_string(CategoryLabel c) noexcept;
CategoryLabel parse_category(std::string_view text);

/// Ordinal size code used for trend fitting: Small=1, Medium=2, Large=3.
/// Uncategorized has no code.
std::optional<int> size_code(CategoryLabel c) noexcept;

/// Area-fraction brackets: Small <= small_max < Medium < large_min <= Large.
struct CategoryBrackets {
  double small_max = 0.03;
  double large_min = 0.15;
};

CategoryLabel category_for_fraction(double fraction, const CategoryBrackets& brackets);

struct Point {
  int x = 0;
  int y = 0;
  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Gaze points; duplicates are kept (several observers can hit one pixel).
struct FixationSet {
  std::vector<Point> points;
  std::size_t count() const noexcept { return points.size(); }
};

struct RegionMask {
  Mask mask;  // nonzero = positive
  std::size_t positive_count() const noexcept;
};

struct ImageRecord {
  std::string id;
  RgbImage pixels;
  CategoryLabel category = CategoryLabel::Uncategorized;

  int width() const noexcept { return pixels.width(); }
  int height() const noexcept { return pixels.height(); }
  Dims dims() const noexcept { return dims_of(pixels); }
};

inline constexpr int kMinImageSide = 16;

struct ManifestEntry {
  std::string id;
  std::filesystem::path image;
  std::filesystem::path fixations;
  std::filesystem::path mask;
  CategoryLabel category = CategoryLabel::Uncategorized;

  friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

/// Paths in entries are relative to `root`; a relative root is resolved
/// against the directory holding the manifest file.
struct DatasetManifest {
  std::filesystem::path root;
  std::vector<ManifestEntry> entries;
  CategoryBrackets brackets;
  std::filesystem::path source;  // manifest file this was read from, if any

  std::filesystem::path resolve(const std::filesystem::path& relative) const;
};

struct Sample {
  ImageRecord image;
  FixationSet fixations;
  RegionMask region;
};

struct Dataset {
  DatasetManifest manifest;
  std::vector<Sample> samples;
};

/// Parses and fully validates: every entry's files are opened and
/// dimension-checked.
DatasetManifest load_manifest(const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);
Dataset load_dataset(const DatasetManifest& manifest);

DatasetManifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir);
void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

/// CSV `x,y` lines (.csv/.txt) or a PNG map where every nonzero pixel is one
/// fixation.
FixationSet load_fixations(const std::filesystem::path& path, Dims image_dims);
FixationSet parse_fixation_csv(std::string_view text, Dims image_dims);

RegionMask load_region_mask(const std::filesystem::path& path);

enum class GroundTruthLayout {
  Independent,  // fixations sampled around the planted region, mask = region
  Coincident,   // fixations are exactly the region pixels
};

struct SynthOptions {
  int width = 128;
  int height = 96;
  GroundTruthLayout layout = GroundTruthLayout::Independent;
  CategoryBrackets brackets;
};

/// Category mix is (Large, Medium, Small).
using CategoryMix = std::array<double, 3>;

/// Writes images/, masks/, fixations/ and manifest.json under `out_dir`.
/// Deterministic for a fixed seed.
DatasetManifest synth_dataset(std::uint64_t seed, int n_images, const CategoryMix& mix,
                              const std::filesystem::path& out_dir,
                              const SynthOptions& options = {});

}  // namespace salbench::corpus
