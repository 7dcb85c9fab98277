#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "salbench/metrics.hpp"
#include "salbench/score_table.hpp"
#include "salbench/stats.hpp"

namespace salbench::bench {

struct SeriesSummary {
  std::string model;
  std::size_t n = 0;
  std::size_t missing = 0;
  double mean = 0.0;
  double std = 0.0;     // sample std over images
  double stderr_ = 0.0;
};

/// Per-model mean/std of one metric under one ground truth.
std::vector<SeriesSummary> summarize(const ScoreTable& table, metrics::MetricId metric,
                                     metrics::GtKind gt);

// --- Experiment 1: fixations vs regions --------------------------------------

struct Exp1Metric {
  metrics::MetricId metric = metrics::MetricId::NSS;
  std::map<metrics::GtKind, std::vector<SeriesSummary>> summaries;
  std::optional<stats::FriedmanResult> friedman;
  std::optional<stats::KendallW> kendall;
  std::vector<std::vector<double>> ranks;  // per gt, models ordered as `models`
  std::vector<std::string> models;
  std::string interpretation;
  std::string error;
};

struct Exp1Report {
  std::vector<Exp1Metric> metrics;
};

Exp1Report run_exp1(const ScoreTable& table);

// --- Experiment 2: region-size categories ------------------------------------

inline constexpr double kBonferroniThreshold = 0.05 / 4.0;

struct Exp2Options {
  std::vector<std::string> trend_exclude{"FT"};
  double significance = kBonferroniThreshold;
};

struct Exp2Row {
  metrics::MetricId metric = metrics::MetricId::NSS;
  metrics::GtKind gt = metrics::GtKind::Fixations;
  std::vector<corpus::CategoryLabel> categories;
  std::vector<std::string> models;
  std::vector<std::vector<double>> means;  // [model][category], NaN if absent
  std::optional<stats::TrendFit> trend;
  std::vector<double> trend_x;
  std::vector<double> trend_y;
  std::vector<std::string> trend_labels;
  std::optional<stats::FriedmanResult> friedman;
  std::optional<stats::KendallW> kendall;
  std::string interpretation;
  bool significant = false;
  std::string error;
};

struct Exp2Report {
  double significance = kBonferroniThreshold;
  std::vector<std::string> trend_exclude;
  std::vector<Exp2Row> rows;
};

Exp2Report run_exp2(const ScoreTable& table, const CategoryIndex& categories,
                    const Exp2Options& options = {});

// --- Experiment 3: PCA metric fusion -----------------------------------------

struct ModelFused {
  std::string model;
  std::size_t n = 0;
  double mean = 0.0;
  double std = 0.0;
};

struct Exp3Gt {
  metrics::GtKind gt = metrics::GtKind::Fixations;
  std::optional<stats::FusionReport> fusion;  // over per-image scores
  std::optional<stats::FusionReport> fusion_of_means;
  std::string fusion_of_means_error;
  std::vector<ModelFused> ranking;  // descending fused mean
  std::optional<stats::AnovaReport> anova;
  std::size_t observations = 0;
  std::string error;
};

struct Exp3Report {
  std::vector<Exp3Gt> gts;
};

Exp3Report run_exp3(const ScoreTable& table, const CategoryIndex& categories, double alpha = 0.05);

}  // namespace salbench::bench
