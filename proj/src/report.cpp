#include "salbench/report.hpp"

#include <cmath>
#include <fstream>

#include "salbench/error.hpp"

namespace salbench {

using metrics::GtKind;
using metrics::MetricId;

namespace {

std::string str(std::string_view s) { return std::string(s); }

// NaN and infinities have no JSON spelling.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

std::string row_label(MetricId m, GtKind g) {
  return str(metrics::to_string(m)) + (g == GtKind::Fixations ? "-fix" : "-reg");
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::MissingFile, "cannot write " + path.string());
  return out;
}

}  // namespace

Json to_json(const stats::FriedmanResult& r) {
  return Json{{"chi_square", number(r.chi_square)},
              {"dof", r.dof},
              {"p_value", number(r.p_value)},
              {"p_value_method", str(stats::to_string(r.method))},
              {"p_asymptotic", number(r.p_asymptotic)},
              {"blocks", r.blocks},
              {"dropped_blocks", r.dropped_blocks},
              {"rank_sums", numbers(r.rank_sums)},
              {"mean_ranks", numbers(r.mean_ranks)},
              {"tie_correction", number(r.tie_correction)}};
}

Json to_json(const stats::KendallW& k) {
  return Json{{"W", number(k.w)},
              {"S", number(k.s)},
              {"rank_totals", numbers(k.rank_totals)},
              {"mean_total", number(k.mean_total)},
              {"tie_sum", number(k.tie_sum)}};
}

Json to_json(const stats::TrendFit& t) {
  Json fitted = Json::array();
  for (bool b : t.fitted) fitted.push_back(b);
  return Json{{"slope", number(t.slope)},
              {"intercept", number(t.intercept)},
              {"points_fitted", t.points_fitted},
              {"excluded", t.excluded},
              {"residuals", numbers(t.residuals)},
              {"fitted", fitted}};
}

Json to_json(const stats::FusionReport& f) {
  return Json{{"loadings", numbers(f.loadings)},
              {"eigenvalues", numbers(f.eigenvalues)},
              {"explained_variance", number(f.explained_variance)},
              {"correlation", number(f.correlation)},
              {"column_means", numbers(f.column_means)},
              {"column_stds", numbers(f.column_stds)},
              {"flipped", f.flipped},
              {"mixed_signs", f.mixed_signs}};
}

Json to_json(const stats::AnovaReport& a) {
  Json groups = Json::array();
  for (const auto& g : a.groups) groups.push_back({{"model", g.model}, {"n", g.n}, {"mean", number(g.mean)}});
  Json pairs = Json::array();
  for (const auto& p : a.tukey) {
    pairs.push_back({{"a", p.a},
                     {"b", p.b},
                     {"mean_diff", number(p.mean_diff)},
                     {"q", number(p.q)},
                     {"p_adjusted", number(p.p_adjusted)},
                     {"significant", p.significant}});
  }
  return Json{{"F", number(a.f)},
              {"p_value", number(a.p_value)},
              {"df_model", a.df_model},
              {"df_error", a.df_error},
              {"ss_model", number(a.ss_model)},
              {"ss_error", number(a.ss_error)},
              {"ss_category", number(a.ss_category)},
              {"mse", number(a.mse)},
              {"partial_eta_squared", number(a.partial_eta_squared)},
              {"alpha", a.alpha},
              {"groups", groups},
              {"tukey", pairs}};
}

Json to_json(const preprocess::PreprocessConfig& c) {
  Json j{{"order", Json::array()}, {"blur_sigma", c.blur_sigma}};
  for (const char* step : preprocess::kPipelineOrder) j["order"].push_back(step);
  j["border_cut"] = c.border_cut ? Json(*c.border_cut) : Json("auto");
  j["border_fraction_default"] = preprocess::kDefaultBorderFraction;
  if (c.target_dims) {
    j["target_dims"] = {c.target_dims->width, c.target_dims->height};
  } else {
    j["target_dims"] = "ground_truth";
  }
  return j;
}

namespace {

Json summaries_json(const std::vector<bench::SeriesSummary>& s) {
  Json a = Json::array();
  for (const auto& x : s) {
    a.push_back({{"model", x.model},
                 {"n", x.n},
                 {"missing", x.missing},
                 {"mean", number(x.mean)},
                 {"std", number(x.std)},
                 {"stderr", number(x.stderr_)}});
  }
  return a;
}

}  // namespace

Json to_json(const bench::Exp1Report& r) {
  Json metrics = Json::array();
  for (const auto& m : r.metrics) {
    Json j{{"metric", str(metrics::to_string(m.metric))}};
    Json sums = Json::object();
    for (const auto& [gt, s] : m.summaries) sums[str(metrics::to_string(gt))] = summaries_json(s);
    j["summaries"] = sums;
    j["friedman"] = m.friedman ? to_json(*m.friedman) : Json(nullptr);
    j["models"] = m.models;
    Json ranks = Json::array();
    for (const auto& row : m.ranks) ranks.push_back(numbers(row));
    j["ranks"] = ranks;
    j["kendall"] = m.kendall ? to_json(*m.kendall) : Json(nullptr);
    j["interpretation"] = m.interpretation;
    if (m.kendall) j["rank_confidence"] = stats::rank_confidence(m.kendall->w);
    j["error"] = m.error.empty() ? Json(nullptr) : Json(m.error);
    metrics.push_back(std::move(j));
  }
  return Json{{"metrics", metrics}, {"table", exp1_table(r)}};
}

Json to_json(const bench::Exp2Report& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json cats = Json::array();
    for (auto c : row.categories) cats.push_back(str(corpus::to_string(c)));
    Json means = Json::array();
    for (const auto& m : row.means) means.push_back(numbers(m));
    Json points = Json::array();
    for (std::size_t i = 0; i < row.trend_x.size(); ++i) {
      points.push_back({{"model", row.trend_labels[i]}, {"x", row.trend_x[i]}, {"y", number(row.trend_y[i])}});
    }
    rows.push_back({{"row", row_label(row.metric, row.gt)},
                    {"metric", str(metrics::to_string(row.metric))},
                    {"gt", str(metrics::to_string(row.gt))},
                    {"categories", cats},
                    {"models", row.models},
                    {"category_means", means},
                    {"trend_points", points},
                    {"trend", row.trend ? to_json(*row.trend) : Json(nullptr)},
                    {"friedman", row.friedman ? to_json(*row.friedman) : Json(nullptr)},
                    {"kendall", row.kendall ? to_json(*row.kendall) : Json(nullptr)},
                    {"interpretation", row.interpretation},
                    {"significant", row.significant},
                    {"error", row.error.empty() ? Json(nullptr) : Json(row.error)}});
  }
  return Json{{"significance_threshold", r.significance},
              {"trend_exclude", r.trend_exclude},
              {"rows", rows},
              {"table", exp2_table(r)}};
}

Json to_json(const bench::Exp3Report& r) {
  Json gts = Json::array();
  for (const auto& g : r.gts) {
    Json ranking = Json::array();
    for (const auto& m : g.ranking) {
      ranking.push_back({{"model", m.model}, {"n", m.n}, {"mean", number(m.mean)}, {"std", number(m.std)}});
    }
    gts.push_back({{"gt", str(metrics::to_string(g.gt))},
                   {"metrics", {"AUROC", "NSS"}},
                   {"observations", g.observations},
                   {"fusion", g.fusion ? to_json(*g.fusion) : Json(nullptr)},
                   {"fusion_of_means", g.fusion_of_means ? to_json(*g.fusion_of_means) : Json(nullptr)},
                   {"fusion_of_means_error",
                    g.fusion_of_means_error.empty() ? Json(nullptr) : Json(g.fusion_of_means_error)},
                   {"ranking", ranking},
                   {"anova", g.anova ? to_json(*g.anova) : Json(nullptr)},
                   {"error", g.error.empty() ? Json(nullptr) : Json(g.error)}});
  }
  return Json{{"gts", gts}, {"table", exp3_table(r)}};
}

Json exp1_table(const bench::Exp1Report& r) {
  Json t = Json::array();
  for (const auto& m : r.metrics) {
    t.push_back({{"metric", str(metrics::to_string(m.metric))},
                 {"p_value", m.friedman ? number(m.friedman->p_value) : Json(nullptr)},
                 {"chi2", m.friedman ? number(m.friedman->chi_square) : Json(nullptr)},
                 {"dof", m.friedman ? Json(m.friedman->dof) : Json(nullptr)},
                 {"W", m.kendall ? number(m.kendall->w) : Json(nullptr)},
                 {"interpretation", m.interpretation}});
  }
  return t;
}

Json exp2_table(const bench::Exp2Report& r) {
  Json t = Json::array();
  for (const auto& row : r.rows) {
    t.push_back({{"row", row_label(row.metric, row.gt)},
                 {"p_value", row.friedman ? number(row.friedman->p_value) : Json(nullptr)},
                 {"chi2", row.friedman ? number(row.friedman->chi_square) : Json(nullptr)},
                 {"significant", row.significant},
                 {"W", row.kendall ? number(row.kendall->w) : Json(nullptr)},
                 {"interpretation", row.interpretation},
                 {"slope", row.trend ? number(row.trend->slope) : Json(nullptr)}});
  }
  return t;
}

Json exp3_table(const bench::Exp3Report& r) {
  Json t = Json::array();
  for (const auto& g : r.gts) {
    Json row{{"row", g.gt == GtKind::Fixations ? "PCA fixations" : "PCA regions"}};
    if (g.fusion) {
      row["w_AUROC"] = number(g.fusion->loadings[0]);
      row["w_NSS"] = number(g.fusion->loadings[1]);
      row["explained_variance"] = number(g.fusion->explained_variance);
    }
    if (g.anova) {
      row["F"] = number(g.anova->f);
      row["p_value"] = number(g.anova->p_value);
      row["partial_eta_squared"] = number(g.anova->partial_eta_squared);
    }
    Json ranking = Json::array();
    for (const auto& m : g.ranking) ranking.push_back(m.model);
    row["ranking"] = ranking;
    t.push_back(std::move(row));
  }
  return t;
}

void write_exp1_figure_csv(const std::filesystem::path& path, const bench::Exp1Report& r) {
  auto out = open_out(path);
  out << "metric,gt,model,n,mean,std\n";
  for (const auto& m : r.metrics) {
    for (const auto& [gt, series] : m.summaries) {
      for (const auto& s : series) {
        out << metrics::to_string(m.metric) << ',' << metrics::to_string(gt) << ',' << s.model << ',' << s.n
            << ',' << format_double(s.mean) << ',' << format_double(s.std) << '\n';
      }
    }
  }
}

void write_exp2_figure_csv(const std::filesystem::path& path, const bench::Exp2Report& r) {
  auto out = open_out(path);
  out << "metric,gt,model,category,size_code,mean\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.models.size(); ++i) {
      for (std::size_t c = 0; c < row.categories.size(); ++c) {
        out << metrics::to_string(row.metric) << ',' << metrics::to_string(row.gt) << ',' << row.models[i] << ','
            << corpus::to_string(row.categories[c]) << ',' << corpus::size_code(row.categories[c]).value_or(0)
            << ',' << format_double(row.means[i][c]) << '\n';
      }
    }
  }
}

void write_exp3_figure_csv(const std::filesystem::path& path, const bench::Exp3Report& r) {
  auto out = open_out(path);
  out << "gt,rank,model,n,mean,std\n";
  for (const auto& g : r.gts) {
    for (std::size_t i = 0; i < g.ranking.size(); ++i) {
      const auto& m = g.ranking[i];
      out << metrics::to_string(g.gt) << ',' << i + 1 << ',' << m.model << ',' << m.n << ','
          << format_double(m.mean) << ',' << format_double(m.std) << '\n';
    }
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace salbench
