#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <boost/math/distributions/fisher_f.hpp>

#include "salbench/error.hpp"
#include "salbench/stats.hpp"

namespace salbench::stats {

namespace {

template <class Key>
std::vector<std::size_t> group_index(std::span<const AnovaObservation> obs, Key key,
                                     std::vector<std::string>& names) {
  std::map<std::string, std::size_t> ids;
  std::vector<std::size_t> out;
  out.reserve(obs.size());
  for (const auto& o : obs) {
    const std::string& k = key(o);
    auto [it, inserted] = ids.emplace(k, names.size());
    if (inserted) names.push_back(k);
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

std::vector<double> category_adjusted(std::span<const AnovaObservation> obs) {
  std::vector<std::string> cats;
  const auto cat = group_index(obs, [](const AnovaObservation& o) -> const std::string& { return o.category; }, cats);
  std::vector<double> sum(cats.size(), 0.0), count(cats.size(), 0.0);
  double grand = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (!std::isfinite(obs[i].score)) throw Error(ErrorCode::NonFiniteScore, "non-finite score");
    sum[cat[i]] += obs[i].score;
    count[cat[i]] += 1.0;
    grand += obs[i].score;
  }
  grand /= static_cast<double>(obs.size());
  // Least squares on dummy-coded categories fits each category mean.
  std::vector<double> adjusted(obs.size());
  for (std::size_t i = 0; i < obs.size(); ++i) {
    adjusted[i] = obs[i].score - sum[cat[i]] / count[cat[i]] + grand;
  }
  return adjusted;
}

AnovaReport anova_adjusted(std::span<const AnovaObservation> obs, double alpha) {
  std::vector<std::string> models, cats;
  const auto group = group_index(obs, [](const AnovaObservation& o) -> const std::string& { return o.model; }, models);
  group_index(obs, [](const AnovaObservation& o) -> const std::string& { return o.category; }, cats);
  if (models.size() < 2) throw Error(ErrorCode::TooFewTreatments, "ANOVA needs at least two models");

  const std::vector<double> adjusted = category_adjusted(obs);
  const std::size_t g = models.size();
  std::vector<double> sum(g, 0.0);
  std::vector<std::size_t> n(g, 0);
  double grand = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    sum[group[i]] += adjusted[i];
    ++n[group[i]];
    grand += adjusted[i];
  }
  grand /= static_cast<double>(obs.size());
  for (std::size_t j = 0; j < g; ++j) {
    if (n[j] < 2) throw Error(ErrorCode::UnbalancedDegenerate, "model '" + models[j] + "' has < 2 observations");
  }

  AnovaReport r;
  r.alpha = alpha;
  for (std::size_t j = 0; j < g; ++j) r.groups.push_back({models[j], n[j], sum[j] / n[j]});

  // Adjustment preserves the grand mean, so score - adjusted is the category
  // mean's deviation from it.
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double cat_effect = obs[i].score - adjusted[i];
    r.ss_category += cat_effect * cat_effect;
  }
  for (std::size_t j = 0; j < g; ++j) {
    const double d = r.groups[j].mean - grand;
    r.ss_model += n[j] * d * d;
  }
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const double d = adjusted[i] - r.groups[group[i]].mean;
    r.ss_error += d * d;
  }

  r.df_model = static_cast<int>(g) - 1;
  r.df_error = static_cast<int>(obs.size()) - static_cast<int>(g) - (static_cast<int>(cats.size()) - 1);
  if (r.df_error < 1) throw Error(ErrorCode::TooFewObservations, "no error degrees of freedom left");
  r.mse = r.ss_error / r.df_error;

  const double ms_model = r.ss_model / r.df_model;
  // Sums of squares below this are rounding noise around a null effect.
  const double noise = 1e-12 * (r.ss_model + r.ss_error + r.ss_category);
  if (r.ss_model <= noise) {
    r.f = 0.0;
    r.p_value = 1.0;
  } else if (r.mse <= 0.0) {
    r.f = std::numeric_limits<double>::infinity();
    r.p_value = 0.0;
  } else {
    r.f = ms_model / r.mse;
    const boost::math::fisher_f dist(r.df_model, r.df_error);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.f));
  }
  const double total = r.ss_model + r.ss_error;
  r.partial_eta_squared = total > 0.0 ? r.ss_model / total : 0.0;

  for (std::size_t a = 0; a < g; ++a) {
    for (std::size_t b = a + 1; b < g; ++b) {
      TukeyPair t{models[a], models[b], r.groups[a].mean - r.groups[b].mean};
      const double se = std::sqrt(0.5 * r.mse * (1.0 / n[a] + 1.0 / n[b]));
      const double diff = std::abs(t.mean_diff);
      if (diff <= 1e-12 * (std::abs(r.groups[a].mean) + std::abs(r.groups[b].mean))) {
        t.q = 0.0;
        t.p_adjusted = 1.0;
      } else if (se <= 0.0) {
        t.q = std::numeric_limits<double>::infinity();
        t.p_adjusted = 0.0;
      } else {
        t.q = diff / se;
        t.p_adjusted = std::clamp(1.0 - studentized_range_cdf(t.q, static_cast<int>(g), r.df_error), 0.0, 1.0);
      }
      t.significant = t.p_adjusted < alpha;
      r.tukey.push_back(std::move(t));
    }
  }
  return r;
}

}  // namespace salbench::stats
