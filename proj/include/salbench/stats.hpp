#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace salbench::stats {

enum class Direction { HigherIsBetter, LowerIsBetter };

/// Best score gets rank 1; ties share the average of the ranks they cover.
std::vector<double> rank_with_ties(std::span<const double> scores,
                                   Direction direction = Direction::HigherIsBetter);

/// Sum of (t^3 - t) over the tie groups of one rank vector.
double tie_term(std::span<const double> ranks);

/// m judges each ranking the same n objects.
class RankMatrix {
 public:
  /// `scores[j]` holds judge j's n scores.
  static RankMatrix from_scores(const std::vector<std::vector<double>>& scores,
                                Direction direction = Direction::HigherIsBetter);
  /// Validates that each row is a proper (possibly tied) ranking of 1..n.
  static RankMatrix from_ranks(std::vector<std::vector<double>> ranks);

  std::size_t judges() const noexcept { return ranks_.size(); }
  std::size_t objects() const noexcept { return ranks_.empty() ? 0 : ranks_.front().size(); }
  const std::vector<std::vector<double>>& ranks() const noexcept { return ranks_; }
  const std::vector<double>& tie_terms() const noexcept { return tie_terms_; }

 private:
  explicit RankMatrix(std::vector<std::vector<double>> ranks);
  std::vector<std::vector<double>> ranks_;
  std::vector<double> tie_terms_;
};

enum class PValueMethod { Asymptotic, Exact };
std::string_view to_string(PValueMethod m) noexcept;

struct FriedmanResult {
  double chi_square = 0.0;
  int dof = 0;
  double p_value = 1.0;
  PValueMethod method = PValueMethod::Asymptotic;
  double p_asymptotic = 1.0;
  std::size_t blocks = 0;
  std::size_t dropped_blocks = 0;
  std::vector<double> rank_sums;   // per treatment
  std::vector<double> mean_ranks;  // per treatment
  double tie_correction = 1.0;     // 1 - sum T / (b k (k^2 - 1))
};

/// Designs with at most this many blocks get an exact permutation p-value.
inline constexpr std::size_t kExactFriedmanMaxBlocks = 8;
inline constexpr std::size_t kExactFriedmanMaxTreatments = 5;

/// `data[block][treatment]`, higher is better within a block. Blocks holding
/// a NaN are dropped and counted.
FriedmanResult friedman_test(const std::vector<std::vector<double>>& data);

/// Upper tail of the chi-square distribution.
double chi_square_sf(double x, double dof);

struct KendallW {
  double w = 0.0;
  double s = 0.0;
  std::vector<double> rank_totals;  // R_i
  double mean_total = 0.0;          // R-bar
  double tie_sum = 0.0;             // sum over judges of T_j
};

KendallW kendalls_w(const RankMatrix& ranks);

/// Table of agreement bands: 1 complete, >=0.9 unusually strong, >=0.7
/// strong, >=0.5 moderate, below that weak.
std::string interpret_w(double w);
std::string rank_confidence(double w);

struct TrendFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::vector<double> residuals;  // y - fit, for every input point
  std::vector<bool> fitted;       // false where the label was excluded
  std::vector<std::string> excluded;
  std::size_t points_fitted = 0;
};

TrendFit ols_trend(std::span<const double> x, std::span<const double> y,
                   std::span<const std::string> labels = {},
                   std::span<const std::string> exclude = {});

struct FusionReport {
  std::vector<double> loadings;       // unit norm, one per metric column
  std::vector<double> eigenvalues;    // descending, of the correlation matrix
  double explained_variance = 0.0;    // percent
  double correlation = 0.0;
  std::vector<double> column_means;
  std::vector<double> column_stds;    // sample std used for standardization
  std::vector<double> scores;         // fused value per observation
  bool flipped = false;               // eigenvector sign was negated
  bool mixed_signs = false;           // loadings disagree in sign
};

/// `columns[c][i]` is metric c of observation i; exactly two columns.
FusionReport pca_fuse(const std::vector<std::vector<double>>& columns);

struct SymmetricEigen2 {
  double lambda1 = 0.0, lambda2 = 0.0;  // lambda1 >= lambda2
  double v1x = 1.0, v1y = 0.0;          // unit eigenvector of lambda1
};

SymmetricEigen2 eigen_symmetric_2x2(double a, double b, double d);

struct AnovaObservation {
  std::string model;
  std::string category;
  double score = 0.0;
};

struct TukeyPair {
  std::string a, b;
  double mean_diff = 0.0;  // mean(a) - mean(b)
  double q = 0.0;
  double p_adjusted = 1.0;
  bool significant = false;
};

struct GroupSummary {
  std::string model;
  std::size_t n = 0;
  double mean = 0.0;
};

struct AnovaReport {
  double f = 0.0;
  double p_value = 1.0;
  double ss_model = 0.0;
  double ss_error = 0.0;
  double ss_category = 0.0;
  int df_model = 0;
  int df_error = 0;
  double mse = 0.0;
  double partial_eta_squared = 0.0;
  double alpha = 0.05;
  std::vector<GroupSummary> groups;
  std::vector<TukeyPair> tukey;
};

/// Removes the category effect by regression on dummy codes (residual plus
/// grand mean), then runs a one-way ANOVA across models with Tukey-HSD
/// (Tukey-Kramer for unequal groups).
AnovaReport anova_adjusted(std::span<const AnovaObservation> observations, double alpha = 0.05);

/// Scores with the category effect removed, in input order.
std::vector<double> category_adjusted(std::span<const AnovaObservation> observations);

/// P(Q <= q) for the studentized range of k means with dof degrees of
/// freedom. dof = infinity gives the normal-range limit.
double studentized_range_cdf(double q, int k, double dof);

}  // namespace salbench::stats
