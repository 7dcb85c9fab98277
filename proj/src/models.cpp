#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "salbench/error.hpp"
#include "salbench/image.hpp"
#include "salbench/models.hpp"

namespace salbench::models {

namespace fs = std::filesystem;

void validate(const SaliencyMap& map) {
  if (map.values.width() <= 0 || map.values.height() <= 0) {
    throw Error(ErrorCode::InvalidArgument, "saliency map from '" + map.model + "' is empty");
  }
  for (double v : map.values.values()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteValue, "map from '" + map.model + "'");
    if (v < 0.0) throw Error(ErrorCode::InvalidArgument, "negative value in map from '" + map.model + "'");
  }
}

namespace {

Map read_csv_grid(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::UnreadableMap, path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (end == tok.c_str() || *end != '\0') {
        throw Error(ErrorCode::UnreadableMap, path.string() + ": bad token '" + tok + "'");
      }
      if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteValue, path.string() + ": '" + tok + "'");
      row.push_back(v);
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error(ErrorCode::UnreadableMap, path.string() + ": ragged rows");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::UnreadableMap, path.string() + ": empty grid");

  Map m(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()));
  for (int y = 0; y < m.height(); ++y) std::copy(rows[y].begin(), rows[y].end(), m.row(y).begin());
  const auto [lo, hi] = std::minmax_element(m.values().begin(), m.values().end());
  const double min = *lo, range = *hi - *lo;
  for (double& v : m.values()) v = range > 0.0 ? (v - min) / range : 0.0;
  return m;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

SaliencyMap load_external_map(const fs::path& path, Dims target) {
  if (!fs::exists(path)) throw Error(ErrorCode::UnreadableMap, "missing " + path.string());
  Map values;
  if (lower(path.extension().string()) == ".csv") {
    values = read_csv_grid(path);
  } else {
    double depth_max = 255.0;
    try {
      values = read_gray_png(path, &depth_max);
    } catch (const Error& e) {
      throw Error(ErrorCode::UnreadableMap, e.detail());
    }
    for (double& v : values.values()) v /= depth_max;
  }
  values = resize(values, target, Interpolation::Linear);
  return {path.parent_path().filename().string(), std::move(values)};
}

ModelSpec parse_model_spec(const std::string& text) {
  const std::string up = [&] {
    std::string s = text;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return s;
  }();
  if (up == "SR") return {"SR", ModelKind::SpectralResidual, {}};
  if (up == "PFT") return {"PFT", ModelKind::PhaseFourier, {}};
  if (up == "FT") return {"FT", ModelKind::FrequencyTuned, {}};
  if (text.rfind("ext:", 0) == 0) {
    const auto eq = text.find('=');
    if (eq != std::string::npos && eq > 4 && eq + 1 < text.size()) {
      return {text.substr(4, eq - 4), ModelKind::External, fs::path(text.substr(eq + 1))};
    }
  }
  throw Error(ErrorCode::UnknownModel, "'" + text + "' (expected SR, PFT, FT or ext:NAME=dir)");
}

ModelRegistry::ModelRegistry(std::vector<ModelSpec> specs, ModelOptions options)
    : specs_(std::move(specs)), options_(options) {
  for (std::size_t i = 0; i < specs_.size(); ++i) {
    if (specs_[i].id.empty()) throw Error(ErrorCode::InvalidArgument, "empty model id");
    for (std::size_t j = 0; j < i; ++j) {
      if (specs_[i].id == specs_[j].id) throw Error(ErrorCode::InvalidArgument, "duplicate model id " + specs_[i].id);
    }
  }
}

SaliencyMap ModelRegistry::compute(const ModelSpec& spec, const corpus::ImageRecord& image) const {
  SaliencyMap map;
  switch (spec.kind) {
    case ModelKind::SpectralResidual: map = spectral_residual(image, options_.spectral); break;
    case ModelKind::PhaseFourier: map = phase_fourier(image, options_.spectral); break;
    case ModelKind::FrequencyTuned: map = frequency_tuned(image, options_.frequency_tuned); break;
    case ModelKind::External: {
      fs::path file = spec.directory / (image.id + ".png");
      if (!fs::exists(file)) file = spec.directory / (image.id + ".csv");
      if (!fs::exists(file)) {
        throw Error(ErrorCode::UnreadableMap, "no map for image '" + image.id + "' in " + spec.directory.string());
      }
      map = load_external_map(file, image.dims());
      break;
    }
  }
  map.model = spec.id;
  validate(map);
  return map;
}

}  // namespace salbench::models
