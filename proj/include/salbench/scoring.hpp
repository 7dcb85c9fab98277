#pragma once

#include <cstdint>
#include <vector>

#include "salbench/corpus.hpp"
#include "salbench/metrics.hpp"
#include "salbench/models.hpp"
#include "salbench/preprocess.hpp"
#include "salbench/score_table.hpp"

namespace salbench {

struct ScoringConfig {
  std::vector<metrics::MetricId> metrics{metrics::MetricId::NSS, metrics::MetricId::AUROC};
  std::vector<metrics::GtKind> gts{metrics::GtKind::Fixations, metrics::GtKind::Regions};
  preprocess::PreprocessConfig preprocess;
  int reps = metrics::kDefaultReps;
  std::uint64_t seed = 0;
};

/// hash(seed, image id, model id, metric id). The ground-truth kind is not part
/// of the key, so both ground truths of a cell see the same negative draws.
std::uint64_t cell_seed(std::uint64_t seed, const std::string& image, const std::string& model,
                        metrics::MetricId metric);

/// One row per image x model x metric x gt kind, in that nesting order.
/// Failures are recorded per row and never abort the batch.
ScoreTable score_corpus(const corpus::Dataset& dataset, const models::ModelRegistry& registry,
                        const ScoringConfig& config);

}  // namespace salbench
