#pragma once

#include "cxlab/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cxlab {

enum class Group { SmallMolecule, Peptide, Dead, Abiotic, Biological, Blinded, Unknown };

std::string_view to_string(Group g) noexcept;

/// Case-insensitive; spaces, hyphens and underscores are interchangeable.
/// Unrecognized names map to Group::Unknown.
Group parse_group(std::string_view name) noexcept;

inline constexpr std::string_view kInchiPrefix = "InChI=1S/";

struct MoleculeRecord {
    std::size_t row = 0;
    std::string id;
    std::optional<std::string> inchi;
    /// Characters after "InChI=1S/", or the full length when that prefix is
    /// missing (payload_fallback set).
    std::size_t payload_length = 0;
    bool payload_fallback = false;
    std::optional<double> ma;
    std::optional<double> ms2_peaks;
    Group group = Group::Unknown;
    /// Raw text of every mapped column, keyed by logical field.
    std::map<std::string, std::string> raw;
    /// Filled by profile_records: lzw, ai, entropy, bdm, payload_length.
    std::map<std::string, double> measures;
};

/// Logical field -> CSV column name. id and group are required, plus at
/// least two of inchi, ma, ms2.
struct ColumnMap {
    std::map<std::string, std::string> columns;

    /// Parses "id=Name,inchi=InChI,ma=MA,ms2=Peaks,group=Class".
    static ColumnMap parse(std::string_view spec);
    bool has(const std::string& field) const { return columns.count(field) > 0; }
};

struct IngestWarning {
    std::size_t row = 0;
    std::string message;
};

struct IngestResult {
    std::vector<MoleculeRecord> records;
    std::size_t skipped = 0;
    std::vector<IngestWarning> warnings;
};

/// Rows (numbered from 1 after the header) with an empty mapped field or a
/// non-numeric ma/ms2 are skipped with a warning. Missing file or missing
/// mapped column throws ValidationError.
IngestResult ingest_csv(const std::string& path, const ColumnMap& map);
IngestResult ingest_csv(std::istream& in, const ColumnMap& map);

/// Header of mapped column names, then the raw mapped fields of each record.
void write_records_csv(std::ostream& out, const std::vector<MoleculeRecord>& records, const ColumnMap& map);

/// Payload of an InChI string (see MoleculeRecord::payload_length).
std::string_view inchi_payload(std::string_view inchi) noexcept;

/// Measures of the InChI payload as a character string: lzw (codeword
/// count), ai (best_of heuristic), entropy (bits per symbol), bdm
/// (lzw_bits estimator) and payload_length. Throws on an empty InChI.
std::map<std::string, double> complexity_profile(const MoleculeRecord& rec);

/// Fills `measures` for every record with an InChI.
void profile_records(std::vector<MoleculeRecord>& records);

/// ma, ms2, or one of the profile measures; nullopt when absent.
std::optional<double> measure_value(const MoleculeRecord& rec, std::string_view measure);

inline constexpr double kDefaultMs2Quantile = 0.14;

struct QuantileFit {
    double tau = 0.0;
    QuantileLine line;
    /// measure - (intercept + slope * ms2), in record order.
    std::vector<double> residuals;
};

/// measure regressed on ms2 peaks.
struct Ms2Relation {
    std::string measure;
    std::size_t n = 0;
    std::vector<std::string> ids;
    double pearson = 0.0;
    LinearFit ols;
    std::vector<QuantileFit> quantiles;
};

/// Needs at least 10 records carrying both values.
Ms2Relation ms2_relation(const std::vector<MoleculeRecord>& records, std::string_view measure,
                         const std::vector<double>& taus);

/// 1 for living groups (biological), 0 for non-living ones (abiotic, dead),
/// nullopt for the rest.
std::optional<int> life_label(Group g) noexcept;

struct ThresholdReport {
    std::string measure;
    double threshold = 0.0;
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double accuracy = 0.0;
    double base_rate = 0.0;
    /// Threshold carried to ms2 peaks through a quantile line of measure on
    /// ms2: (threshold - intercept) / slope.
    std::optional<double> ms2_threshold;
};

/// Rule: measure > threshold means living. Records without a life label or
/// the measure are ignored. Throws unless both labels occur.
ThresholdReport threshold_analysis(const std::vector<MoleculeRecord>& records, std::string_view measure,
                                   double threshold, const QuantileLine* ms2_line = nullptr);

struct GroupSeparation {
    std::string measure;
    std::vector<std::pair<std::string, std::size_t>> groups;
    std::vector<std::pair<std::string, std::size_t>> excluded;
    /// Cucconi p-values, groups x groups (diagonal compares a group with
    /// itself).
    std::vector<std::vector<double>> cucconi_p;
    std::optional<KruskalWallis> kruskal;
};

inline constexpr std::size_t kMinGroupSize = 5;

/// Groups with fewer than kMinGroupSize values are listed as excluded.
GroupSeparation group_separation(const std::vector<MoleculeRecord>& records, std::string_view measure,
                                 std::size_t permutations = kDefaultPermutations, std::uint64_t seed = 0);

} // namespace cxlab
