#include "salbench/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "salbench/error.hpp"

namespace salbench::bench {

using metrics::GtKind;
using metrics::MetricId;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// (image, model, gt, metric) -> value for scored rows.
class CellIndex {
 public:
  explicit CellIndex(const ScoreTable& table) : images_(table.images()), models_(table.models()) {
    for (const auto& r : table.rows) {
      present_.insert({r.gt, r.metric});
      if (r.ok()) values_[{r.image, r.model, static_cast<int>(r.gt), static_cast<int>(r.metric)}] = r.value;
    }
  }

  double get(const std::string& image, const std::string& model, GtKind gt, MetricId metric) const {
    const auto it = values_.find({image, model, static_cast<int>(gt), static_cast<int>(metric)});
    return it == values_.end() ? kNaN : it->second;
  }

  bool has(GtKind gt, MetricId metric) const { return present_.count({gt, metric}) > 0; }
  const std::vector<std::string>& images() const { return images_; }
  const std::vector<std::string>& models() const { return models_; }

 private:
  std::vector<std::string> images_, models_;
  std::map<std::tuple<std::string, std::string, int, int>, double> values_;
  std::set<std::pair<GtKind, MetricId>> present_;
};

struct MeanStd {
  std::size_t n = 0;
  double mean = kNaN, std = kNaN;
};

MeanStd mean_std(const std::vector<double>& v) {
  MeanStd out;
  out.n = v.size();
  if (v.empty()) return out;
  double sum = 0.0;
  for (double x : v) sum += x;
  out.mean = sum / v.size();
  double ss = 0.0;
  for (double x : v) ss += (x - out.mean) * (x - out.mean);
  out.std = v.size() > 1 ? std::sqrt(ss / (v.size() - 1)) : 0.0;
  return out;
}

std::vector<MetricId> metric_order(const CellIndex& idx, std::initializer_list<MetricId> preferred) {
  std::vector<MetricId> out;
  for (MetricId m : preferred)
    if (idx.has(GtKind::Fixations, m) || idx.has(GtKind::Regions, m)) out.push_back(m);
  return out;
}

}  // namespace

std::vector<SeriesSummary> summarize(const ScoreTable& table, MetricId metric, GtKind gt) {
  std::vector<SeriesSummary> out;
  for (const auto& model : table.models()) {
    std::vector<double> values;
    std::size_t missing = 0;
    for (const auto& r : table.rows) {
      if (r.model != model || r.metric != metric || r.gt != gt) continue;
      if (r.ok()) values.push_back(r.value);
      else ++missing;
    }
    if (values.empty() && missing == 0) continue;
    const MeanStd ms = mean_std(values);
    SeriesSummary s{model, ms.n, missing, ms.mean, ms.std, 0.0};
    s.stderr_ = ms.n > 0 ? ms.std / std::sqrt(static_cast<double>(ms.n)) : kNaN;
    out.push_back(std::move(s));
  }
  return out;
}

// --- Experiment 1 ------------------------------------------------------------

Exp1Report run_exp1(const ScoreTable& table) {
  const CellIndex idx(table);
  Exp1Report report;
  for (MetricId metric : metric_order(idx, {MetricId::AUROC, MetricId::NSS})) {
    Exp1Metric m;
    m.metric = metric;
    for (GtKind gt : {GtKind::Fixations, GtKind::Regions}) {
      if (idx.has(gt, metric)) m.summaries[gt] = summarize(table, metric, gt);
    }
    if (!idx.has(GtKind::Fixations, metric) || !idx.has(GtKind::Regions, metric)) {
      m.error = "both ground truths are required";
      report.metrics.push_back(std::move(m));
      continue;
    }
    try {
      // Blocks: every (image, model) cell; treatments: the two ground truths.
      std::vector<std::vector<double>> blocks;
      for (const auto& image : idx.images()) {
        for (const auto& model : idx.models()) {
          blocks.push_back({idx.get(image, model, GtKind::Fixations, metric),
                            idx.get(image, model, GtKind::Regions, metric)});
        }
      }
      m.friedman = stats::friedman_test(blocks);

      // Judges: the ground truths; objects: models ranked by mean score.
      std::vector<std::vector<double>> means(2);
      const auto& fix = m.summaries[GtKind::Fixations];
      const auto& reg = m.summaries[GtKind::Regions];
      for (const auto& f : fix) {
        const auto r = std::find_if(reg.begin(), reg.end(), [&](const auto& s) { return s.model == f.model; });
        if (r == reg.end() || f.n == 0 || r->n == 0) continue;
        m.models.push_back(f.model);
        means[0].push_back(f.mean);
        means[1].push_back(r->mean);
      }
      const auto ranks = stats::RankMatrix::from_scores(means);
      m.ranks = ranks.ranks();
      m.kendall = stats::kendalls_w(ranks);
      m.interpretation = stats::interpret_w(m.kendall->w);
    } catch (const Error& e) {
      m.error = e.what();
    }
    report.metrics.push_back(std::move(m));
  }
  return report;
}

// --- Experiment 2 ------------------------------------------------------------

Exp2Report run_exp2(const ScoreTable& table, const CategoryIndex& categories, const Exp2Options& options) {
  using corpus::CategoryLabel;
  const CellIndex idx(table);

  std::vector<CategoryLabel> present;
  for (CategoryLabel c : {CategoryLabel::Large, CategoryLabel::Medium, CategoryLabel::Small}) {
    const bool any = std::any_of(idx.images().begin(), idx.images().end(), [&](const std::string& im) {
      const auto it = categories.find(im);
      return it != categories.end() && it->second == c;
    });
    if (any) present.push_back(c);
  }
  if (present.size() < 2) {
    throw Error(ErrorCode::MissingCategory, "size analysis needs at least two of Large/Medium/Small");
  }

  Exp2Report report;
  report.significance = options.significance;
  report.trend_exclude = options.trend_exclude;

  for (GtKind gt : {GtKind::Fixations, GtKind::Regions}) {
    for (MetricId metric : {MetricId::AUROC, MetricId::NSS}) {
      if (!idx.has(gt, metric)) continue;
      Exp2Row row;
      row.metric = metric;
      row.gt = gt;
      row.categories = present;
      row.models = idx.models();
      for (const auto& model : row.models) {
        std::vector<double> per_cat;
        for (CategoryLabel c : present) {
          std::vector<double> v;
          for (const auto& image : idx.images()) {
            const auto it = categories.find(image);
            if (it == categories.end() || it->second != c) continue;
            const double x = idx.get(image, model, gt, metric);
            if (!std::isnan(x)) v.push_back(x);
          }
          per_cat.push_back(mean_std(v).mean);
        }
        row.means.push_back(std::move(per_cat));
      }

      for (std::size_t i = 0; i < row.models.size(); ++i) {
        for (std::size_t c = 0; c < present.size(); ++c) {
          if (std::isnan(row.means[i][c])) continue;
          row.trend_x.push_back(*corpus::size_code(present[c]));
          row.trend_y.push_back(row.means[i][c]);
          row.trend_labels.push_back(row.models[i]);
        }
      }
      try {
        row.trend = stats::ols_trend(row.trend_x, row.trend_y, row.trend_labels, options.trend_exclude);
      } catch (const Error& e) {
        row.error = e.what();
      }

      try {
        // Blocks: models; treatments: categories.
        row.friedman = stats::friedman_test(row.means);
        row.significant = row.friedman->p_value < options.significance;

        // Judges: categories; objects: models with a mean in every category.
        std::vector<std::vector<double>> judges(present.size());
        for (const auto& m : row.means) {
          if (std::any_of(m.begin(), m.end(), [](double v) { return std::isnan(v); })) continue;
          for (std::size_t c = 0; c < present.size(); ++c) judges[c].push_back(m[c]);
        }
        row.kendall = stats::kendalls_w(stats::RankMatrix::from_scores(judges));
        row.interpretation = stats::interpret_w(row.kendall->w);
      } catch (const Error& e) {
        if (!row.error.empty()) row.error += "; ";
        row.error += e.what();
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

// --- Experiment 3 ------------------------------------------------------------

Exp3Report run_exp3(const ScoreTable& table, const CategoryIndex& categories, double alpha) {
  const CellIndex idx(table);
  Exp3Report report;
  for (GtKind gt : {GtKind::Fixations, GtKind::Regions}) {
    if (!idx.has(gt, MetricId::AUROC) && !idx.has(gt, MetricId::NSS)) continue;
    Exp3Gt out;
    out.gt = gt;
    if (!idx.has(gt, MetricId::AUROC) || !idx.has(gt, MetricId::NSS)) {
      out.error = "fusion needs both AUROC and NSS";
      report.gts.push_back(std::move(out));
      continue;
    }

    std::vector<std::vector<double>> columns(2);
    std::vector<stats::AnovaObservation> obs;
    for (const auto& image : idx.images()) {
      const auto cat = categories.find(image);
      const std::string category(
          corpus::to_string(cat == categories.end() ? corpus::CategoryLabel::Uncategorized : cat->second));
      for (const auto& model : idx.models()) {
        const double auc = idx.get(image, model, gt, MetricId::AUROC);
        const double nss = idx.get(image, model, gt, MetricId::NSS);
        if (std::isnan(auc) || std::isnan(nss)) continue;
        columns[0].push_back(auc);
        columns[1].push_back(nss);
        obs.push_back({model, category, 0.0});
      }
    }
    out.observations = obs.size();

    try {
      out.fusion = stats::pca_fuse(columns);
      for (std::size_t i = 0; i < obs.size(); ++i) obs[i].score = out.fusion->scores[i];

      std::vector<std::vector<double>> model_means(2);
      for (const auto& model : idx.models()) {
        std::vector<double> fused, a, n;
        for (std::size_t i = 0; i < obs.size(); ++i) {
          if (obs[i].model != model) continue;
          fused.push_back(obs[i].score);
          a.push_back(columns[0][i]);
          n.push_back(columns[1][i]);
        }
        if (fused.empty()) continue;
        const MeanStd ms = mean_std(fused);
        out.ranking.push_back({model, ms.n, ms.mean, ms.std});
        model_means[0].push_back(mean_std(a).mean);
        model_means[1].push_back(mean_std(n).mean);
      }
      std::stable_sort(out.ranking.begin(), out.ranking.end(),
                       [](const ModelFused& x, const ModelFused& y) { return x.mean > y.mean; });
      try {
        out.fusion_of_means = stats::pca_fuse(model_means);
      } catch (const Error& e) {
        out.fusion_of_means_error = e.what();
      }
      out.anova = stats::anova_adjusted(obs, alpha);
    } catch (const Error& e) {
      out.error = e.what();
    }
    report.gts.push_back(std::move(out));
  }
  return report;
}

}  // namespace salbench::bench
