#include "salbench/scoring.hpp"

#include <exception>
#include <limits>

#include "salbench/error.hpp"
#include "salbench/rng.hpp"

namespace salbench {

std::uint64_t cell_seed(std::uint64_t seed, const std::string& image, const std::string& model,
                        metrics::MetricId metric) {
  return derive_seed(seed, {image, model, metrics::to_string(metric)});
}

namespace {

std::string reason(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return std::string(to_string(err->code()));
  return "InternalError";
}

}  // namespace

ScoreTable score_corpus(const corpus::Dataset& dataset, const models::ModelRegistry& registry,
                        const ScoringConfig& config) {
  const auto& specs = registry.specs();
  const std::size_t n_images = dataset.samples.size(), n_models = specs.size();
  const std::size_t per_cell = config.metrics.size() * config.gts.size();

  ScoreTable table;
  table.rows.resize(n_images * n_models * per_cell);
  const long cells = static_cast<long>(n_images * n_models);

#pragma omp parallel for schedule(dynamic)
  for (long c = 0; c < cells; ++c) {
    const auto& sample = dataset.samples[c / n_models];
    const auto& spec = specs[c % n_models];
    ScoreRow* rows = &table.rows[c * per_cell];

    std::size_t k = 0;
    for (auto metric : config.metrics) {
      for (auto gt : config.gts) {
        ScoreRow& r = rows[k++];
        r.image = sample.image.id;
        r.model = spec.id;
        r.gt = gt;
        r.metric = metric;
        r.reps = metric == metrics::MetricId::AUROC ? config.reps : 1;
        r.seed = cell_seed(config.seed, sample.image.id, spec.id, metric);
        r.value = std::numeric_limits<double>::quiet_NaN();
      }
    }

    Map prepared;
    try {
      const auto map = registry.compute(spec, sample.image);
      prepared = preprocess::apply(map.values, preprocess::resolve(config.preprocess, sample.image.dims()));
    } catch (const std::exception& e) {
      for (std::size_t i = 0; i < per_cell; ++i) rows[i].error = reason(e);
      continue;
    }

    for (std::size_t i = 0; i < per_cell; ++i) {
      ScoreRow& r = rows[i];
      const metrics::GroundTruth gt = r.gt == metrics::GtKind::Fixations
                                          ? metrics::GroundTruth{&sample.fixations}
                                          : metrics::GroundTruth{&sample.region};
      try {
        const auto score = r.metric == metrics::MetricId::NSS
                               ? metrics::nss(prepared, gt)
                               : metrics::auroc(prepared, gt, {config.reps, r.seed, metrics::AurocMode::Sampled});
        r.value = score.value;
      } catch (const std::exception& e) {
        r.error = reason(e);
      }
    }
  }
  return table;
}

}  // namespace salbench
