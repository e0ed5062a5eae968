#pragma once

#include "cxlab/bdm.hpp"
#include "cxlab/entropy.hpp"
#include "cxlab/molecular.hpp"
#include "cxlab/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cxlab {

struct ZbcConfig {
    std::size_t length = 15;
    std::size_t trials = 10'000;
    std::uint64_t seed = 0;
    bool exact_shuffle = false;
    std::size_t entropy_window = kDefaultEntropyWindow;
    BdmEstimator bdm_estimator = BdmEstimator::LzwBits;
    std::size_t bdm_block = kDefaultBdmBlock;
};

struct NamedTTest {
    std::string a;
    std::string b;
    std::optional<TTest> test;
    std::string skipped;
};

struct MeasureFits {
    std::string measure;
    /// Best (smallest KS) first; empty when skipped.
    std::vector<FitReport> fits;
    std::string skipped;
};

/// Per-trial measures of ZBC samples of one length.
struct ZbcReport {
    ZbcConfig config;
    /// lzw, ai, entropy_rate, entropy, bdm; values in trial order.
    std::map<std::string, std::vector<double>> values;
    std::vector<NamedTTest> welch;
    std::vector<MeasureFits> fits;
};

/// Measure order used in every report.
const std::vector<std::string>& zbc_measures();

/// Throws ValidationError when trials < 2 or length == 0.
ZbcReport run_zbc_permutations(const ZbcConfig& config);

enum class GrowingKind { Random, Pattern5, Pattern10, Zbc };

std::string_view to_string(GrowingKind k) noexcept;
GrowingKind parse_growing_kind(std::string_view name);

inline const std::vector<std::size_t> kCheckpoints{8, 14, 20, 40, 60, 80, 100, 200, 500, 1000, 3000};

struct GrowingConfig {
    GrowingKind kind = GrowingKind::Random;
    std::size_t max_length = 3000;
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    /// Letters used by the random kind.
    std::size_t random_alphabet = 4;
    std::size_t entropy_window = kDefaultEntropyWindow;
    /// Every length up to this is on the grid; beyond it each gap between
    /// checkpoints gets `segment_points` evenly spaced lengths.
    std::size_t dense_until = 200;
    std::size_t segment_points = 10;
    std::vector<std::size_t> checkpoints = kCheckpoints;
};

struct CheckpointCorrelation {
    std::size_t length = 0;
    /// Mean over trials of the Spearman correlation, over the growth series
    /// up to `length`, between Ai and the named measure; nullopt when every
    /// trial was degenerate (a constant series).
    std::optional<double> lzw;
    std::optional<double> entropy_rate;
    std::size_t lzw_trials = 0;
    std::size_t entropy_trials = 0;
};

struct RatioStats {
    std::size_t length = 0;
    /// Trials with Ai > 1 (where log Ai > 0).
    std::size_t n = 0;
    std::optional<double> mean;
    std::optional<double> sd;
};

struct DensityCell {
    std::size_t checkpoint = 0;
    double ai = 0.0;
    double lzw = 0.0;
    std::size_t count = 0;
};

struct GrowingReport {
    GrowingConfig config;
    /// True for pattern kinds: one series computed and shared by all trials.
    bool deterministic = false;
    std::vector<std::size_t> grid;
    std::vector<std::size_t> checkpoints;
    /// Mean over trials of each measure at every grid length.
    std::map<std::string, std::vector<double>> mean_series;
    std::vector<CheckpointCorrelation> correlations;
    /// log(LZW) / log(Ai) across trials at every grid length.
    std::vector<RatioStats> log_ratio;
    std::optional<PowerLaw> ratio_mean_fit;
    std::optional<PowerLaw> ratio_sd_fit;
    /// (Ai, LZW) pair counts across trials at each checkpoint.
    std::vector<DensityCell> density;
};

/// Throws ValidationError when max_length < 8 or trials == 0.
GrowingReport run_growing(const GrowingConfig& config);

struct MolecularConfig {
    std::string csv_path;
    ColumnMap columns;
    std::vector<double> quantiles{0.05, kDefaultMs2Quantile, 0.5, 0.95};
    double ma_threshold = 15.0;
    double length_threshold = 100.0;
    std::size_t permutations = kDefaultPermutations;
    std::uint64_t seed = 0;
    std::size_t knn_k = 5;
};

struct KnnSummary {
    std::string features;
    std::optional<KnnResult> result;
    std::vector<RocPoint> roc;
    std::string skipped;
};

struct MolecularReport {
    MolecularConfig config;
    IngestResult ingest;
    std::vector<Ms2Relation> ms2;
    std::optional<LinearFit> ma_vs_length;
    std::optional<double> ma_length_pearson;
    std::vector<ThresholdReport> thresholds;
    std::vector<GroupSeparation> separation;
    std::vector<KnnSummary> knn;
    /// Section name -> reason, for sections the data could not support.
    std::map<std::string, std::string> skipped;
};

/// Propagates ingestion errors; sections lacking data are listed in
/// `skipped` rather than failing the run.
MolecularReport run_molecular(const MolecularConfig& config);

} // namespace cxlab
