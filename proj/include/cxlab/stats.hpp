#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cxlab {

/// Average ranks (1-based), ties sharing the mean of their positions.
std::vector<double> mid_ranks(std::span<const double> values);

/// Product-moment correlation. Throws ValidationError ("degenerate") for
/// fewer than 3 points or zero variance in either coordinate.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Pearson correlation of mid-ranks. Same errors as pearson.
double spearman(std::span<const double> xs, std::span<const double> ys);

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;
};

/// Least squares; r_squared is 0 when ys is constant.
LinearFit ols(std::span<const double> xs, std::span<const double> ys);

struct QuantileLine {
    double intercept = 0.0;
    double slope = 0.0;
    double loss = 0.0;
};

/// sum of rho_tau(y - a - b x), rho_tau(u) = u (tau - [u < 0]).
double pinball_loss(std::span<const double> xs, std::span<const double> ys, double tau, double a,
                    double b);

/// Exact single-feature quantile regression: some optimal line passes
/// through two data points with distinct x, so every such line is scored.
/// Ties within 1e-12 relative loss go to smaller |slope|, then smaller
/// |intercept|. Throws unless 0 < tau < 1 and x takes two distinct values.
QuantileLine quantile_regression(std::span<const double> xs, std::span<const double> ys, double tau);

enum class Family { Pareto, Geometric, Gaussian };

std::string_view to_string(Family f) noexcept;

/// Maximum-likelihood fit compared with the data.
///
/// Pareto: x_m = min, alpha = n / sum ln(x / x_m); params {x_m, alpha}.
/// Geometric: on k = x - min over {0, 1, ...}, p = 1 / (1 + mean k);
///   params {min, p}; values must be integers.
/// Gaussian: params {mu, sigma} with the 1/n variance.
///
/// mae and rmse compare observed and expected bin counts: unit bins on
/// integers when the data are integer-valued with range <= 200, otherwise
/// 50 equal-width bins over [min, max]. ks_stat is sup |F_n - F|.
struct FitReport {
    Family family = Family::Gaussian;
    std::vector<double> params;
    double mae = 0.0;
    double rmse = 0.0;
    double ks_stat = 0.0;
    double log_likelihood = 0.0;
};

inline constexpr std::size_t kMinFitSamples = 20;

/// Throws ValidationError for fewer than kMinFitSamples values, constant
/// data ("degenerate") or values outside the family's support.
FitReport fit_distribution(std::span<const double> values, Family family);

/// All families that accept the data, best (smallest ks_stat) first.
std::vector<FitReport> rank_fits(std::span<const double> values);

struct TTest {
    double t = 0.0;
    double df = 0.0;
    double p_value = 1.0;
};

/// Welch's unequal-variance t test, two-sided.
TTest welch_t(std::span<const double> a, std::span<const double> b);

struct KruskalWallis {
    double h = 0.0;
    double df = 0.0;
    double p_value = 1.0;
};

/// Tie-corrected H with a chi-square(groups - 1) p-value.
KruskalWallis kruskal_wallis(const std::vector<std::vector<double>>& groups);

struct Cucconi {
    double c = 0.0;
    double p_value = 1.0;
    std::size_t permutations = 0;
};

inline constexpr std::size_t kDefaultPermutations = 10'000;

/// Cucconi location-scale statistic from squared ranks and squared contrary
/// ranks of the first sample (mid-ranks on ties). p = (1 + #{C* >= C}) /
/// (1 + P) over P label permutations, permutation i drawn from its own
/// (seed, i) stream. Each sample needs at least 5 values.
Cucconi cucconi(std::span<const double> a, std::span<const double> b,
                std::size_t permutations = kDefaultPermutations, std::uint64_t seed = 0);

/// Statistic only.
double cucconi_statistic(std::span<const double> a, std::span<const double> b);

/// Mann-Whitney AUC: P(score_pos > score_neg) + 0.5 P(tie).
/// Throws unless both labels are present.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

struct RocPoint {
    double threshold = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;
};

/// Points for every distinct threshold, from (0,0) to (1,1).
std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const int> labels);

struct KnnResult {
    std::vector<int> predictions;
    /// Fraction of the k neighbours labelled 1.
    std::vector<double> scores;
    double accuracy = 0.0;
    double auc = 0.5;
};

/// k nearest neighbours with Euclidean distance on z-scored features
/// (constant features contribute nothing). Labels are 0 or 1. With
/// leave_one_out each point is classified by the others; otherwise each
/// point is its own first neighbour. Distance ties go to the lower index;
/// a 50/50 vote goes to the label of the nearest neighbour. auc is 0.5
/// when only one label is present.
KnnResult knn_classify(const std::vector<std::vector<double>>& features, std::span<const int> labels,
                       std::size_t k, bool leave_one_out = true);

struct Summary {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

/// Sample sd (n - 1); quartiles by linear interpolation (type 7).
Summary summarize(std::span<const double> values);

/// Log-log least squares y = c x^k, over points with x > 0 and y > 0.
struct PowerLaw {
    double coefficient = 0.0;
    double exponent = 0.0;
    double r_squared = 0.0;
};
PowerLaw fit_power_law(std::span<const double> xs, std::span<const double> ys);

} // namespace cxlab
