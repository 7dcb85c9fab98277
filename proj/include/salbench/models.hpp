#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "salbench/corpus.hpp"
#include "salbench/grid.hpp"

namespace salbench::models {

/// Dense grid of finite, non-negative conspicuity scores.
struct SaliencyMap {
  std::string model;
  Map values;

  Dims dims() const noexcept { return dims_of(values); }
};

/// Throws NonFiniteValue or InvalidArgument if the invariants do not hold.
void validate(const SaliencyMap& map);

struct SpectralOptions {
  int working_size = 64;          // larger side after downscaling
  int box_size = 3;               // log-amplitude averaging filter
  double smoothing_frac = 0.025;  // Gaussian sigma as a fraction of working_size
  bool error_on_degenerate = false;
};

SaliencyMap spectral_residual(const corpus::ImageRecord& image, const SpectralOptions& options = {});
SaliencyMap phase_fourier(const corpus::ImageRecord& image, const SpectralOptions& options = {});

struct FrequencyTunedOptions {
  double blur_radius = 3.0;  // Gaussian sigma, pixels
};

SaliencyMap frequency_tuned(const corpus::ImageRecord& image, const FrequencyTunedOptions& options = {});

/// Grayscale PNG (8/16-bit, divided by the bit-depth maximum) or CSV float
/// grid (min-max scaled). Resized bilinearly to `target` when needed.
SaliencyMap load_external_map(const std::filesystem::path& path, Dims target);

enum class ModelKind { SpectralResidual, PhaseFourier, FrequencyTuned, External };

struct ModelSpec {
  std::string id;
  ModelKind kind = ModelKind::External;
  std::filesystem::path directory;  // External only: holds <image id>.png|.csv
};

/// Accepts "SR", "PFT", "FT" or "ext:NAME=dir".
ModelSpec parse_model_spec(const std::string& text);

struct ModelOptions {
  SpectralOptions spectral;
  FrequencyTunedOptions frequency_tuned;
};

class ModelRegistry {
 public:
  ModelRegistry() = default;
  explicit ModelRegistry(std::vector<ModelSpec> specs, ModelOptions options = {});

  const std::vector<ModelSpec>& specs() const noexcept { return specs_; }
  const ModelOptions& options() const noexcept { return options_; }

  SaliencyMap compute(const ModelSpec& spec, const corpus::ImageRecord& image) const;

 private:
  std::vector<ModelSpec> specs_;
  ModelOptions options_;
};

}  // namespace salbench::models
