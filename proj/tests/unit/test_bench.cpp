#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <fstream>
#include <sstream>

#include "gen.hpp"
#include "salbench/error.hpp"
#include "salbench/experiments.hpp"
#include "salbench/report.hpp"

using namespace salbench;
using namespace salbench::bench;
using metrics::GtKind;
using metrics::MetricId;
using corpus::CategoryLabel;

namespace {

using ScoreFn = std::function<double(int image, int model, GtKind, MetricId)>;

// Every image x model x metric x gt, scored by `f`.
ScoreTable planted_table(int images, const std::vector<std::string>& models, const ScoreFn& f) {
  ScoreTable t;
  for (int i = 0; i < images; ++i) {
    for (std::size_t m = 0; m < models.size(); ++m) {
      for (auto metric : {MetricId::NSS, MetricId::AUROC}) {
        for (auto gt : {GtKind::Fixations, GtKind::Regions}) {
          t.rows.push_back({"img" + std::to_string(i), models[m], gt, metric,
                            f(i, static_cast<int>(m), gt, metric), 1, 0, ""});
        }
      }
    }
  }
  return t;
}

CategoryIndex cycle_categories(int images) {
  CategoryIndex c;
  const CategoryLabel order[] = {CategoryLabel::Large, CategoryLabel::Medium, CategoryLabel::Small};
  for (int i = 0; i < images; ++i) c["img" + std::to_string(i)] = order[i % 3];
  return c;
}

const std::vector<std::string> kModels{"M0", "M1", "M2", "M3", "M4", "M5", "M6", "M7"};

}  // namespace

TEST_CASE("summaries: mean, sample std, standard error, missing counts") {
  ScoreTable t;
  for (double v : {1.0, 2.0, 3.0, 4.0}) t.rows.push_back({"i" + std::to_string(v), "A", GtKind::Fixations, MetricId::NSS, v, 1, 0, ""});
  t.rows.push_back({"ix", "A", GtKind::Fixations, MetricId::NSS, NAN, 1, 0, "DegenerateMap"});
  const auto s = summarize(t, MetricId::NSS, GtKind::Fixations);
  REQUIRE(s.size() == 1);
  CHECK(s[0].n == 4);
  CHECK(s[0].missing == 1);
  CHECK(s[0].mean == 2.5);
  CHECK(s[0].std == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(s[0].stderr_ == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
}

TEST_CASE("exp1: identical ground truths give W = 1 and chi-square 0") {
  gen::Engine e(1);
  std::map<std::pair<int, int>, double> base;
  const auto t = planted_table(12, {"A", "B", "C", "D"}, [&](int i, int m, GtKind, MetricId metric) {
    auto key = std::pair{i, m * 2 + (metric == MetricId::NSS)};
    if (!base.count(key)) base[key] = m + gen::real(e, 0, 0.5);
    return base[key];
  });
  const auto r = run_exp1(t);
  REQUIRE(r.metrics.size() == 2);
  for (const auto& m : r.metrics) {
    CHECK(m.error.empty());
    CHECK(m.kendall->w == 1.0);
    CHECK(m.friedman->chi_square == 0.0);
    CHECK(m.friedman->blocks == 48);
    CHECK(m.interpretation == "Complete agreement");
  }
  const auto table = exp1_table(r);
  for (const auto& row : table) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : row.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"metric", "p_value", "chi2", "dof", "W", "interpretation"});
  }
}

TEST_CASE("exp1: W equals the stats-module recomputation on a superlevel-set corpus") {
  gen::Engine e(9);
  const auto t = planted_table(15, {"A", "B", "C", "D", "E"}, [&](int, int m, GtKind gt, MetricId) {
    return 0.1 * m + (gt == GtKind::Regions ? 0.05 : 0.0) + gen::real(e, 0, 0.3);
  });
  const auto r = run_exp1(t);
  for (const auto& m : r.metrics) {
    std::vector<std::vector<double>> means(2);
    for (const auto& s : summarize(t, m.metric, GtKind::Fixations)) means[0].push_back(s.mean);
    for (const auto& s : summarize(t, m.metric, GtKind::Regions)) means[1].push_back(s.mean);
    CHECK(m.kendall->w == stats::kendalls_w(stats::RankMatrix::from_scores(means)).w);
    CHECK(m.kendall->w >= 0.7);
  }
}

TEST_CASE("exp2: null case gives W = 1 and flat trends") {
  const auto t = planted_table(9, {"A", "B", "C", "FT"}, [](int, int m, GtKind, MetricId) { return 0.2 * m; });
  const auto r = run_exp2(t, cycle_categories(9));
  REQUIRE(r.rows.size() == 4);
  const char* labels[] = {"AUROC-fix", "NSS-fix", "AUROC-reg", "NSS-reg"};
  const auto table = exp2_table(r);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(table[i]["row"] == labels[i]);
    CHECK(r.rows[i].kendall->w == 1.0);
    CHECK(std::abs(r.rows[i].trend->slope) < 1e-12);
    CHECK(r.rows[i].trend->excluded == std::vector<std::string>{"FT"});
    CHECK(r.rows[i].friedman->dof == 2);
    CHECK(r.rows[i].friedman->blocks == 4);
    CHECK_FALSE(r.rows[i].significant);
  }
}

TEST_CASE("exp2: planted Small > Medium > Large effect") {
  gen::Engine e(4);
  const auto cats = cycle_categories(30);
  const auto t = planted_table(30, kModels, [&](int i, int m, GtKind, MetricId) {
    const double size_effect = (i % 3) * 0.1;  // Large 0, Medium .1, Small .2
    return 0.5 + 0.01 * m + size_effect + gen::real(e, 0, 0.02);
  });
  const auto r = run_exp2(t, cats);
  for (const auto& row : r.rows) {
    CHECK(row.trend->slope < 0.0);
    CHECK(row.friedman->p_value < kBonferroniThreshold);
    CHECK(row.significant);
    CHECK(row.categories == std::vector<CategoryLabel>{CategoryLabel::Large, CategoryLabel::Medium, CategoryLabel::Small});
  }
}

TEST_CASE("exp2 needs two categories") {
  const auto t = planted_table(4, {"A", "B"}, [](int i, int m, GtKind, MetricId) { return i + m; });
  CategoryIndex only_large;
  for (int i = 0; i < 4; ++i) only_large["img" + std::to_string(i)] = CategoryLabel::Large;
  try {
    run_exp2(t, only_large);
    FAIL("expected MissingCategory");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingCategory);
  }
}

TEST_CASE("exp3: perfectly correlated metrics and table shape") {
  gen::Engine e(3);
  std::map<std::pair<int, int>, double> base;
  const auto t = planted_table(9, {"A", "B", "C"}, [&](int i, int m, GtKind, MetricId metric) {
    auto& b = base[{i, m}];
    if (b == 0.0) b = m + gen::real(e, 0.01, 0.9);
    return metric == MetricId::AUROC ? b : 3.0 * b - 1.0;
  });
  const auto r = run_exp3(t, cycle_categories(9));
  REQUIRE(r.gts.size() == 2);
  for (const auto& g : r.gts) {
    CHECK(std::abs(g.fusion->explained_variance - 100.0) < 1e-9);
    std::vector<std::string> order;
    for (const auto& m : g.ranking) order.push_back(m.model);
    CHECK(order == std::vector<std::string>{"C", "B", "A"});
  }
  const auto table = exp3_table(r);
  CHECK(table[0]["row"] == "PCA fixations");
  CHECK(table[1]["row"] == "PCA regions");
  CHECK(table[0].contains("explained_variance"));
  CHECK(table[0].contains("partial_eta_squared"));
}

TEST_CASE("exp3: dominant model is flagged against every other") {
  gen::Engine e(12);
  const std::vector<std::string> models{"TOP", "B", "C", "D", "E"};
  const auto t = planted_table(24, models, [&](int, int m, GtKind, MetricId metric) {
    const double lift = m == 0 ? 1.0 : 0.0;
    return (metric == MetricId::AUROC ? 0.6 : 1.0) + lift + gen::real(e, 0, 0.3);
  });
  const auto r = run_exp3(t, cycle_categories(24));
  for (const auto& g : r.gts) {
    CHECK(g.ranking.front().model == "TOP");
    int flagged = 0;
    for (const auto& p : g.anova->tukey)
      if ((p.a == "TOP" || p.b == "TOP") && p.significant) ++flagged;
    CHECK(flagged == 4);
  }
}

TEST_CASE("reports are recomputable from the emitted CSVs") {
  gen::Engine e(21);
  auto t = planted_table(18, {"SR", "PFT", "FT", "X"}, [&](int i, int m, GtKind gt, MetricId metric) {
    return (metric == MetricId::AUROC ? 0.5 : 0.0) + 0.05 * m + 0.03 * (i % 3) + (gt == GtKind::Regions) * 0.01 +
           gen::real(e, 0, 0.2);
  });
  t.rows[5].value = NAN;
  t.rows[5].error = "DegenerateMap";
  const auto cats = cycle_categories(18);
  const auto dir = gen::scratch_dir("audit");
  write_csv(dir / "scores.csv", t);
  write_categories_csv(dir / "categories.csv", cats);
  const auto t2 = read_score_csv(dir / "scores.csv");
  const auto c2 = read_categories_csv(dir / "categories.csv");
  CHECK(c2 == cats);
  CHECK(to_json(run_exp1(t)).dump() == to_json(run_exp1(t2)).dump());
  CHECK(to_json(run_exp2(t, cats)).dump() == to_json(run_exp2(t2, c2)).dump());
  CHECK(to_json(run_exp3(t, cats)).dump() == to_json(run_exp3(t2, c2)).dump());

  const auto r1 = run_exp1(t);
  for (const auto& m : r1.metrics) CHECK(m.friedman->dropped_blocks == (m.metric == t.rows[5].metric ? 1u : 0u));

  write_exp1_figure_csv(dir / "fig1.csv", r1);
  std::ifstream in(dir / "fig1.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "metric,gt,model,n,mean,std");
}
