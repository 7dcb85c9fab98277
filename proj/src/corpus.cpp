#include "salbench/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <exception>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "salbench/error.hpp"

namespace salbench::corpus {

namespace fs = std::filesystem;

std::string_view to_string(CategoryLabel c) noexcept {
  switch (c) {
    case CategoryLabel::Large: return "Large";
    case CategoryLabel::Medium: return "Medium";
    case CategoryLabel::Small: return "Small";
    case CategoryLabel::Uncategorized: return "Uncategorized";
  }
  return "Uncategorized";
}

CategoryLabel parse_category(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "large") return CategoryLabel::Large;
  if (lower == "medium") return CategoryLabel::Medium;
  if (lower == "small") return CategoryLabel::Small;
  if (lower == "uncategorized" || lower.empty()) return CategoryLabel::Uncategorized;
  throw Error(ErrorCode::MalformedEntry, "unknown category '" + std::string(text) + "'");
}

std::optional<int> size_code(CategoryLabel c) noexcept {
  switch (c) {
    case CategoryLabel::Small: return 1;
    case CategoryLabel::Medium: return 2;
    case CategoryLabel::Large: return 3;
    case CategoryLabel::Uncategorized: return std::nullopt;
  }
  return std::nullopt;
}

CategoryLabel category_for_fraction(double fraction, const CategoryBrackets& brackets) {
  if (fraction >= brackets.large_min) return CategoryLabel::Large;
  if (fraction <= brackets.small_max) return CategoryLabel::Small;
  return CategoryLabel::Medium;
}

std::size_t RegionMask::positive_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(mask.values().begin(), mask.values().end(), [](std::uint8_t v) { return v != 0; }));
}

fs::path DatasetManifest::resolve(const fs::path& relative) const {
  if (relative.is_absolute()) return relative;
  return root / relative;
}

// --- fixations ---------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool parse_int(std::string_view s, int& out) {
  const std::string t = trim(s);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  return ec == std::errc() && ptr == t.data() + t.size();
}

std::string point_text(int x, int y) {
  return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

FixationSet parse_fixation_csv(std::string_view text, Dims dims) {
  FixationSet set;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto comma = t.find(',');
    int x = 0, y = 0;
    if (comma == std::string::npos || !parse_int(std::string_view(t).substr(0, comma), x) ||
        !parse_int(std::string_view(t).substr(comma + 1), y)) {
      // A single non-numeric first line is a header.
      if (line_no == 1 && set.points.empty()) continue;
      throw Error(ErrorCode::MalformedEntry, "bad fixation line " + std::to_string(line_no) + ": '" + t + "'");
    }
    if (x < 0 || y < 0 || x >= dims.width || y >= dims.height) {
      throw Error(ErrorCode::OutOfBounds, point_text(x, y));
    }
    set.points.push_back({x, y});
  }
  if (set.points.empty()) throw Error(ErrorCode::EmptyFixationSet, "no fixation rows");
  return set;
}

FixationSet load_fixations(const fs::path& path, Dims dims) {
  if (!fs::exists(path)) throw Error(ErrorCode::MissingFile, path.string());
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".csv" || ext == ".txt") return parse_fixation_csv(read_text(path), dims);

  const Map map = read_gray_png(path);
  if (dims_of(map) != dims) {
    throw Error(ErrorCode::DimensionMismatch, "fixation map " + path.string());
  }
  FixationSet set;
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      if (map.at(x, y) != 0.0) set.points.push_back({x, y});
    }
  }
  if (set.points.empty()) throw Error(ErrorCode::EmptyFixationSet, path.string());
  return set;
}

RegionMask load_region_mask(const fs::path& path) {
  const Map m = read_gray_png(path);
  RegionMask region{Mask(m.width(), m.height())};
  for (std::size_t i = 0; i < m.size(); ++i) region.mask[i] = m[i] != 0.0 ? 1 : 0;
  return region;
}

// --- manifest ----------------------------------------------------------------

DatasetManifest parse_manifest(std::string_view json_text, const fs::path& base_dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedEntry, std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw Error(ErrorCode::MalformedEntry, "manifest needs an \"entries\" array");
  }

  DatasetManifest manifest;
  fs::path root = doc.value("root", std::string("."));
  manifest.root = root.is_absolute() ? root : base_dir / root;
  if (doc.contains("brackets")) {
    const auto& b = doc["brackets"];
    manifest.brackets.small_max = b.value("small_max", manifest.brackets.small_max);
    manifest.brackets.large_min = b.value("large_min", manifest.brackets.large_min);
    if (!(manifest.brackets.small_max < manifest.brackets.large_min)) {
      throw Error(ErrorCode::MalformedEntry, "brackets need small_max < large_min");
    }
  }

  std::set<std::string> seen;
  std::size_t index = 0;
  for (const auto& e : doc["entries"]) {
    const std::string where = "entry #" + std::to_string(index++);
    if (!e.is_object()) throw Error(ErrorCode::MalformedEntry, where + " is not an object");
    for (const char* key : {"id", "image", "fixations", "mask"}) {
      if (!e.contains(key) || !e[key].is_string()) {
        throw Error(ErrorCode::MalformedEntry, where + " lacks string field '" + key + "'");
      }
    }
    ManifestEntry entry;
    entry.id = e["id"].get<std::string>();
    if (entry.id.empty()) throw Error(ErrorCode::MalformedEntry, where + " has an empty id");
    entry.image = e["image"].get<std::string>();
    entry.fixations = e["fixations"].get<std::string>();
    entry.mask = e["mask"].get<std::string>();
    entry.category = parse_category(e.value("category", std::string("Uncategorized")));
    if (!seen.insert(entry.id).second) throw Error(ErrorCode::DuplicateId, entry.id);
    manifest.entries.push_back(std::move(entry));
  }
  return manifest;
}

namespace {

Sample load_sample(const DatasetManifest& manifest, const ManifestEntry& entry) {
  const std::string who = "entry '" + entry.id + "': ";
  for (const auto* p : {&entry.image, &entry.fixations, &entry.mask}) {
    if (!fs::exists(manifest.resolve(*p))) {
      throw Error(ErrorCode::MissingFile, who + manifest.resolve(*p).string());
    }
  }
  try {
    Sample s;
    s.image.id = entry.id;
    s.image.category = entry.category;
    s.image.pixels = read_rgb_png(manifest.resolve(entry.image));
    if (s.image.width() < kMinImageSide || s.image.height() < kMinImageSide) {
      throw Error(ErrorCode::MalformedEntry, "image smaller than 16x16");
    }
    s.region = load_region_mask(manifest.resolve(entry.mask));
    if (dims_of(s.region.mask) != s.image.dims()) {
      throw Error(ErrorCode::DimensionMismatch, "mask is " + std::to_string(s.region.mask.width()) + "x" +
                                                    std::to_string(s.region.mask.height()) + ", image is " +
                                                    std::to_string(s.image.width()) + "x" +
                                                    std::to_string(s.image.height()));
    }
    if (s.region.positive_count() == 0) {
      throw Error(ErrorCode::MalformedEntry, "region mask has no positive pixel");
    }
    s.fixations = load_fixations(manifest.resolve(entry.fixations), s.image.dims());
    return s;
  } catch (const Error& e) {
    throw Error(e.code(), who + e.detail());
  }
}

}  // namespace

Dataset load_dataset(const DatasetManifest& manifest) {
  Dataset ds{manifest, std::vector<Sample>(manifest.entries.size())};
  std::vector<std::exception_ptr> errors(manifest.entries.size());
  const long n = static_cast<long>(manifest.entries.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      ds.samples[i] = load_sample(manifest, manifest.entries[i]);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  // Report the first failing entry in manifest order.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return ds;
}

Dataset load_dataset(const fs::path& path) {
  if (!fs::exists(path)) throw Error(ErrorCode::MissingFile, path.string());
  DatasetManifest m = parse_manifest(read_text(path), path.parent_path());
  m.source = path;
  return load_dataset(m);
}

DatasetManifest load_manifest(const fs::path& path) { return load_dataset(path).manifest; }

void save_manifest(const DatasetManifest& manifest, const fs::path& path) {
  nlohmann::ordered_json doc;
  fs::path root = manifest.root;
  std::error_code ec;
  const fs::path rel = fs::relative(fs::absolute(root), fs::absolute(path).parent_path(), ec);
  if (!ec && !rel.empty()) root = rel;
  doc["root"] = root.generic_string();
  doc["brackets"] = {{"small_max", manifest.brackets.small_max}, {"large_min", manifest.brackets.large_min}};
  doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : manifest.entries) {
    doc["entries"].push_back({{"id", e.id},
                              {"image", e.image.generic_string()},
                              {"fixations", e.fixations.generic_string()},
                              {"mask", e.mask.generic_string()},
                              {"category", std::string(to_string(e.category))}});
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

}  // namespace salbench::corpus
