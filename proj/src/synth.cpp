#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>

#include "salbench/corpus.hpp"
#include "salbench/error.hpp"
#include "salbench/rng.hpp"

namespace salbench::corpus {

namespace fs = std::filesystem;

namespace {

std::array<int, 3> category_counts(int n, const CategoryMix& mix) {
  double sum = 0.0;
  for (double p : mix) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw Error(ErrorCode::InvalidProportions, "negative or non-finite");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidProportions, "proportions sum to " + std::to_string(sum));
  }
  // Largest remainder; ties go to the earlier category.
  std::array<int, 3> counts{};
  std::array<double, 3> rem{};
  int assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double exact = mix[i] * n;
    counts[i] = static_cast<int>(std::floor(exact));
    rem[i] = exact - counts[i];
    assigned += counts[i];
  }
  std::array<int, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rem[a] > rem[b]; });
  for (int k = 0; assigned < n; ++k, ++assigned) ++counts[order[k % 3]];
  return counts;
}

struct FractionRange {
  double lo, hi;
};

FractionRange target_range(CategoryLabel c, const CategoryBrackets& b) {
  switch (c) {
    case CategoryLabel::Large: return {b.large_min + 0.03, std::min(b.large_min + 0.15, 0.45)};
    case CategoryLabel::Small: return {b.small_max * 0.3, b.small_max * 0.75};
    default: {
      const double lo = b.small_max + 0.02, hi = b.large_min - 0.04;
      if (lo < hi) return {lo, hi};
      const double mid = 0.5 * (b.small_max + b.large_min);
      return {mid, mid};
    }
  }
}

constexpr std::array<Rgb, 7> kPalette{{
    {245, 215, 35},
    {25, 30, 120},
    {150, 20, 20},
    {160, 240, 245},
    {20, 95, 30},
    {245, 245, 240},
    {120, 20, 110},
}};

std::uint8_t clamp_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

struct Planted {
  RgbImage image;
  Mask mask;
  double cx = 0, cy = 0, rx = 0, ry = 0;
};

Planted plant(Rng& rng, CategoryLabel category, const SynthOptions& opt) {
  const int w = opt.width, h = opt.height;
  const double area = static_cast<double>(w) * h;
  const FractionRange range = target_range(category, opt.brackets);
  const double margin = std::max(3.0, 0.08 * std::min(w, h));

  Planted p;
  p.mask = Mask(w, h);
  for (int attempt = 0;; ++attempt) {
    if (attempt == 200) {
      throw Error(ErrorCode::InvalidArgument, "cannot plant a region for this image size and bracket");
    }
    const double frac = uniform(rng, range.lo, range.hi);
    const double aspect = uniform(rng, 0.75, 1.33);
    double rx = std::sqrt(frac * area / (std::numbers::pi * aspect));
    double ry = aspect * rx;
    rx = std::min(rx, 0.5 * w - margin);
    ry = std::min(ry, 0.5 * h - margin);
    if (rx < 0.5 || ry < 0.5) continue;
    const double cx = uniform(rng, margin + rx, w - margin - rx);
    const double cy = uniform(rng, margin + ry, h - margin - ry);
    std::size_t count = 0;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const double dx = (x - cx) / rx, dy = (y - cy) / ry;
        const bool inside = dx * dx + dy * dy <= 1.0;
        p.mask.at(x, y) = inside ? 1 : 0;
        count += inside;
      }
    }
    if (count == 0 || category_for_fraction(count / area, opt.brackets) != category) continue;
    p.cx = cx, p.cy = cy, p.rx = rx, p.ry = ry;
    break;
  }

  // Low-contrast background: tinted gray, a gentle gradient and pixel noise.
  const double base = uniform(rng, 105.0, 150.0);
  const std::array<double, 3> tint{uniform(rng, -10, 10), uniform(rng, -10, 10), uniform(rng, -10, 10)};
  const double gx = uniform(rng, -15, 15), gy = uniform(rng, -15, 15);
  const Rgb color = kPalette[uniform_index(rng, kPalette.size())];
  p.image = RgbImage(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      Rgb& px = p.image.at(x, y);
      if (p.mask.at(x, y)) {
        for (int c = 0; c < 3; ++c) px[c] = clamp_byte(color[c] + uniform(rng, -6, 6));
      } else {
        const double ramp = gx * (x / double(w) - 0.5) + gy * (y / double(h) - 0.5);
        for (int c = 0; c < 3; ++c) px[c] = clamp_byte(base + tint[c] + ramp + uniform(rng, -18, 18));
      }
    }
  }
  return p;
}

std::vector<Point> draw_fixations(Rng& rng, const Planted& p, GroundTruthLayout layout) {
  std::vector<Point> pts;
  const int w = p.mask.width(), h = p.mask.height();
  if (layout == GroundTruthLayout::Coincident) {
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        if (p.mask.at(x, y)) pts.push_back({x, y});
    return pts;
  }
  const int n = 12 + static_cast<int>(uniform_index(rng, 13));
  const int inside = static_cast<int>(std::ceil(0.9 * n));
  while (static_cast<int>(pts.size()) < inside) {
    const int x = static_cast<int>(std::lround(p.cx + 0.5 * p.rx * standard_normal(rng)));
    const int y = static_cast<int>(std::lround(p.cy + 0.5 * p.ry * standard_normal(rng)));
    if (x < 0 || y < 0 || x >= w || y >= h || !p.mask.at(x, y)) continue;
    pts.push_back({x, y});
  }
  while (static_cast<int>(pts.size()) < n) {
    pts.push_back({static_cast<int>(uniform_index(rng, w)), static_cast<int>(uniform_index(rng, h))});
  }
  return pts;
}

}  // namespace

DatasetManifest synth_dataset(std::uint64_t seed, int n_images, const CategoryMix& mix,
                              const fs::path& out_dir, const SynthOptions& options) {
  if (n_images < 1) throw Error(ErrorCode::InvalidArgument, "n_images must be >= 1");
  if (options.width < kMinImageSide || options.height < kMinImageSide) {
    throw Error(ErrorCode::InvalidArgument, "synthetic images must be at least 16x16");
  }
  const auto counts = category_counts(n_images, mix);

  std::vector<CategoryLabel> labels;
  const std::array<CategoryLabel, 3> order{CategoryLabel::Large, CategoryLabel::Medium, CategoryLabel::Small};
  for (int c = 0; c < 3; ++c) labels.insert(labels.end(), counts[c], order[c]);
  Rng shuffle_rng(derive_seed(seed, {"categories"}));
  for (std::size_t i = labels.size(); i > 1; --i) {
    std::swap(labels[i - 1], labels[uniform_index(shuffle_rng, i)]);
  }

  DatasetManifest manifest;
  manifest.root = out_dir;
  manifest.brackets = options.brackets;
  manifest.source = out_dir / "manifest.json";

  for (int i = 0; i < n_images; ++i) {
    char id[32];
    std::snprintf(id, sizeof id, "img%03d", i);
    Rng rng(derive_seed(seed, {"image", id}));
    const Planted planted = plant(rng, labels[i], options);
    const auto fixations = draw_fixations(rng, planted, options.layout);

    ManifestEntry entry{id, fs::path("images") / (std::string(id) + ".png"),
                        fs::path("fixations") / (std::string(id) + ".csv"),
                        fs::path("masks") / (std::string(id) + ".png"), labels[i]};
    write_rgb_png(out_dir / entry.image, planted.image);
    Mask mask_png = planted.mask;
    for (auto& v : mask_png.values()) v = v ? 255 : 0;
    write_mask_png(out_dir / entry.mask, mask_png);
    fs::create_directories((out_dir / entry.fixations).parent_path());
    std::ofstream fx(out_dir / entry.fixations, std::ios::binary);
    for (const Point& p : fixations) fx << p.x << ',' << p.y << '\n';
    manifest.entries.push_back(std::move(entry));
  }
  save_manifest(manifest, manifest.source);
  return manifest;
}

}  // namespace salbench::corpus
