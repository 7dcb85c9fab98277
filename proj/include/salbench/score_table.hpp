#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "salbench/corpus.hpp"
#include "salbench/metrics.hpp"

namespace salbench {

/// One long-form record. `value` is NaN and `error` names the failure when
/// the cell could not be scored.
struct ScoreRow {
  std::string image;
  std::string model;
  metrics::GtKind gt = metrics::GtKind::Fixations;
  metrics::MetricId metric = metrics::MetricId::NSS;
  double value = 0.0;
  int reps = 1;
  std::uint64_t seed = 0;
  std::string error;

  bool ok() const noexcept { return error.empty(); }
};

class ScoreTable {
 public:
  std::vector<ScoreRow> rows;

  std::size_t missing_count() const;
  std::map<std::string, std::size_t> missing_by_reason() const;

  /// First-appearance order.
  std::vector<std::string> models() const;
  std::vector<std::string> images() const;

  /// Value for one cell, nullopt when absent or missing.
  std::optional<double> find(const std::string& image, const std::string& model,
                             metrics::GtKind gt, metrics::MetricId metric) const;
};

// CSV columns: image,model,gt,metric,value,reps,seed,error
void write_csv(std::ostream& out, const ScoreTable& table);
void write_csv(const std::filesystem::path& path, const ScoreTable& table);
ScoreTable read_score_csv(std::istream& in);
ScoreTable read_score_csv(const std::filesystem::path& path);

/// Shortest decimal that round-trips.
std::string format_double(double v);

using CategoryIndex = std::map<std::string, corpus::CategoryLabel>;

CategoryIndex category_index(const corpus::DatasetManifest& manifest);
void write_categories_csv(const std::filesystem::path& path, const CategoryIndex& index);
CategoryIndex read_categories_csv(const std::filesystem::path& path);

}  // namespace salbench
