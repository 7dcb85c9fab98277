#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "salbench/experiments.hpp"
#include "salbench/preprocess.hpp"
#include "salbench/scoring.hpp"
#include "salbench/stats.hpp"

namespace salbench {

inline constexpr const char* kToolkitName = "salbench";
inline constexpr const char* kToolkitVersion = "1.0.0";

using Json = nlohmann::ordered_json;

Json to_json(const stats::FriedmanResult& r);
Json to_json(const stats::KendallW& k);
Json to_json(const stats::TrendFit& t);
Json to_json(const stats::FusionReport& f);
Json to_json(const stats::AnovaReport& a);
Json to_json(const preprocess::PreprocessConfig& c);

Json to_json(const bench::Exp1Report& r);
Json to_json(const bench::Exp2Report& r);
Json to_json(const bench::Exp3Report& r);

/// Table-shaped summaries: exp1 {metric, p_value, chi2, dof, W,
/// interpretation}; exp2 rows {AUROC-fix, NSS-fix, AUROC-reg, NSS-reg};
/// exp3 rows {PCA fixations, PCA zones}.
Json exp1_table(const bench::Exp1Report& r);
Json exp2_table(const bench::Exp2Report& r);
Json exp3_table(const bench::Exp3Report& r);

// Plot-ready series (model, mean, std per series).
void write_exp1_figure_csv(const std::filesystem::path& path, const bench::Exp1Report& r);
void write_exp2_figure_csv(const std::filesystem::path& path, const bench::Exp2Report& r);
void write_exp3_figure_csv(const std::filesystem::path& path, const bench::Exp3Report& r);

void write_json(const std::filesystem::path& path, const Json& j);

}  // namespace salbench
