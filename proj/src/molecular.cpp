#include "cxlab/molecular.hpp"

#include "cxlab/assembly.hpp"
#include "cxlab/bdm.hpp"
#include "cxlab/csv.hpp"
#include "cxlab/entropy.hpp"
#include "cxlab/error.hpp"
#include "cxlab/lz.hpp"
#include "cxlab/parallel.hpp"
#include "cxlab/rng.hpp"
#include "cxlab/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

namespace cxlab {

namespace {

constexpr std::pair<Group, std::string_view> kGroupNames[] = {
    {Group::SmallMolecule, "small_molecule"}, {Group::Peptide, "peptide"},   {Group::Dead, "dead"},
    {Group::Abiotic, "abiotic"},              {Group::Biological, "biological"}, {Group::Blinded, "blinded"},
    {Group::Unknown, "unknown"},
};

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::optional<double> parse_number(const std::string& text)
{
    const std::string t = trim(text);
    if (t.empty())
        return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

const std::set<std::string> kFields{"id", "inchi", "ma", "ms2", "group"};

} // namespace

std::string_view to_string(Group g) noexcept
{
    for (const auto& [group, name] : kGroupNames)
        if (group == g)
            return name;
    return "unknown";
}

Group parse_group(std::string_view name) noexcept
{
    std::string key;
    for (char c : trim(name))
        key += (c == ' ' || c == '-') ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (key == "small_molecules")
        key = "small_molecule";
    if (key == "peptides")
        key = "peptide";
    for (const auto& [group, n] : kGroupNames)
        if (n == key)
            return group;
    return Group::Unknown;
}

ColumnMap ColumnMap::parse(std::string_view spec)
{
    ColumnMap m;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t end = std::min(spec.find(',', start), spec.size());
        const std::string_view item = spec.substr(start, end - start);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 == item.size())
            throw ValidationError("column map entry '" + std::string(item) + "' is not field=column");
        const std::string field(item.substr(0, eq));
        if (!kFields.count(field))
            throw ValidationError("unknown column map field '" + field + "'");
        if (!m.columns.emplace(field, std::string(item.substr(eq + 1))).second)
            throw ValidationError("column map field '" + field + "' given twice");
        start = end + 1;
    }
    if (!m.has("id") || !m.has("group"))
        throw ValidationError("column map needs id and group");
    if (m.has("inchi") + m.has("ma") + m.has("ms2") < 2)
        throw ValidationError("column map needs at least two of inchi, ma, ms2");
    return m;
}

std::string_view inchi_payload(std::string_view inchi) noexcept
{
    return inchi.starts_with(kInchiPrefix) ? inchi.substr(kInchiPrefix.size()) : inchi;
}

IngestResult ingest_csv(const std::string& path, const ColumnMap& map)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot read " + path);
    return ingest_csv(in, map);
}

IngestResult ingest_csv(std::istream& in, const ColumnMap& map)
{
    CsvReader reader(in);
    const auto header = reader.next();
    if (!header)
        throw ValidationError("csv: missing header row");
    std::map<std::string, std::size_t> where;
    for (const auto& [field, column] : map.columns) {
        const auto it = std::find_if(header->begin(), header->end(),
                                     [&](const std::string& h) { return trim(h) == column; });
        if (it == header->end())
            throw ValidationError("csv: mapped column '" + column + "' (" + field + ") not in header");
        where[field] = static_cast<std::size_t>(it - header->begin());
    }

    IngestResult out;
    std::size_t row = 0;
    while (auto fields = reader.next()) {
        ++row;
        if (fields->size() == 1 && trim((*fields)[0]).empty())
            continue;
        auto skip = [&](std::string why) {
            ++out.skipped;
            out.warnings.push_back({row, std::move(why)});
        };
        MoleculeRecord rec;
        rec.row = row;
        std::string missing;
        for (const auto& [field, col] : where) {
            if (col >= fields->size() || trim((*fields)[col]).empty()) {
                missing = field;
                break;
            }
            rec.raw[field] = (*fields)[col];
        }
        if (!missing.empty()) {
            skip("row " + std::to_string(row) + ": missing " + missing);
            continue;
        }
        rec.id = trim(rec.raw["id"]);
        rec.group = parse_group(rec.raw["group"]);
        bool bad = false;
        for (const char* field : {"ma", "ms2"}) {
            if (!map.has(field))
                continue;
            const auto v = parse_number(rec.raw[field]);
            if (!v || *v < 0.0) {
                skip("row " + std::to_string(row) + ": " + field + " value '" + rec.raw[field] +
                     "' is not a non-negative number");
                bad = true;
                break;
            }
            (std::string_view(field) == "ma" ? rec.ma : rec.ms2_peaks) = *v;
        }
        if (bad)
            continue;
        if (map.has("inchi")) {
            std::string inchi = trim(rec.raw["inchi"]);
            if (!inchi.starts_with("InChI=")) {
                skip("row " + std::to_string(row) + ": InChI does not start with 'InChI='");
                continue;
            }
            rec.payload_fallback = !inchi.starts_with(kInchiPrefix);
            rec.payload_length = inchi_payload(inchi).size();
            if (rec.payload_fallback)
                out.warnings.push_back({row, "row " + std::to_string(row) +
                                                 ": no InChI=1S/ prefix, payload length is the full string"});
            rec.inchi = std::move(inchi);
        }
        out.records.push_back(std::move(rec));
    }
    return out;
}

void write_records_csv(std::ostream& out, const std::vector<MoleculeRecord>& records, const ColumnMap& map)
{
    std::vector<std::string> row;
    for (const auto& [field, column] : map.columns)
        row.push_back(column);
    write_csv_row(out, row);
    for (const auto& rec : records) {
        row.clear();
        for (const auto& [field, column] : map.columns) {
            const auto it = rec.raw.find(field);
            row.push_back(it == rec.raw.end() ? std::string() : it->second);
        }
        write_csv_row(out, row);
    }
}

std::map<std::string, double> complexity_profile(const MoleculeRecord& rec)
{
    if (!rec.inchi || rec.inchi->empty())
        throw ValidationError("record " + rec.id + ": empty InChI");
    const std::string_view payload = inchi_payload(*rec.inchi);
    if (payload.empty())
        throw ValidationError("record " + rec.id + ": empty InChI payload");
    const Sequence x = Sequence::from_text(payload);
    BdmOptions bo;
    bo.estimator = BdmEstimator::LzwBits;
    return {
        {"lzw", static_cast<double>(lzw_metrics(x.symbols()).c2)},
        {"ai", static_cast<double>(ai_estimate(x.symbols()))},
        {"entropy", block_entropy(x.symbols(), 1)},
        {"bdm", bdm_bits(x.symbols(), bo)},
        {"payload_length", static_cast<double>(payload.size())},
    };
}

void profile_records(std::vector<MoleculeRecord>& records)
{
    parallel_for(records.size(), [&](std::size_t i) {
        if (records[i].inchi)
            records[i].measures = complexity_profile(records[i]);
    });
}

std::optional<double> measure_value(const MoleculeRecord& rec, std::string_view measure)
{
    if (measure == "ma")
        return rec.ma;
    if (measure == "ms2")
        return rec.ms2_peaks;
    if (measure == "payload_length" && rec.inchi)
        return static_cast<double>(rec.payload_length);
    const auto it = rec.measures.find(std::string(measure));
    if (it == rec.measures.end())
        return std::nullopt;
    return it->second;
}

Ms2Relation ms2_relation(const std::vector<MoleculeRecord>& records, std::string_view measure,
                         const std::vector<double>& taus)
{
    Ms2Relation r;
    r.measure = measure;
    std::vector<double> xs, ys;
    for (const auto& rec : records) {
        const auto y = measure_value(rec, measure);
        if (!y || !rec.ms2_peaks)
            continue;
        xs.push_back(*rec.ms2_peaks);
        ys.push_back(*y);
        r.ids.push_back(rec.id);
    }
    r.n = xs.size();
    if (r.n < 10)
        throw ValidationError("insufficient data: " + std::to_string(r.n) + " records carry ms2 and " +
                              std::string(measure));
    r.pearson = pearson(xs, ys);
    r.ols = ols(xs, ys);
    for (double tau : taus) {
        QuantileFit q;
        q.tau = tau;
        q.line = quantile_regression(xs, ys, tau);
        for (std::size_t i = 0; i < xs.size(); ++i)
            q.residuals.push_back(ys[i] - (q.line.intercept + q.line.slope * xs[i]));
        r.quantiles.push_back(std::move(q));
    }
    return r;
}

std::optional<int> life_label(Group g) noexcept
{
    switch (g) {
    case Group::Biological: return 1;
    case Group::Abiotic:
    case Group::Dead: return 0;
    default: return std::nullopt;
    }
}

ThresholdReport threshold_analysis(const std::vector<MoleculeRecord>& records, std::string_view measure,
                                   double threshold, const QuantileLine* ms2_line)
{
    ThresholdReport r;
    r.measure = measure;
    r.threshold = threshold;
    for (const auto& rec : records) {
        const auto label = life_label(rec.group);
        const auto v = measure_value(rec, measure);
        if (!label || !v)
            continue;
        const bool predicted = *v > threshold;
        if (*label)
            ++(predicted ? r.tp : r.fn);
        else
            ++(predicted ? r.fp : r.tn);
    }
    const std::size_t pos = r.tp + r.fn, neg = r.fp + r.tn;
    if (pos == 0 || neg == 0)
        throw ValidationError("threshold analysis needs living and non-living records");
    const double total = static_cast<double>(pos + neg);
    r.base_rate = static_cast<double>(pos) / total;
    r.recall = static_cast<double>(r.tp) / static_cast<double>(pos);
    r.precision = r.tp + r.fp ? static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp) : 0.0;
    r.accuracy = static_cast<double>(r.tp + r.tn) / total;
    if (ms2_line && ms2_line->slope != 0.0)
        r.ms2_threshold = (threshold - ms2_line->intercept) / ms2_line->slope;
    return r;
}

GroupSeparation group_separation(const std::vector<MoleculeRecord>& records, std::string_view measure,
                                 std::size_t permutations, std::uint64_t seed)
{
    GroupSeparation r;
    r.measure = measure;
    std::map<Group, std::vector<double>> values;
    for (const auto& rec : records)
        if (const auto v = measure_value(rec, measure))
            values[rec.group].push_back(*v);

    std::vector<const std::vector<double>*> kept;
    for (const auto& [g, v] : values) {
        if (v.size() >= kMinGroupSize) {
            r.groups.emplace_back(to_string(g), v.size());
            kept.push_back(&v);
        } else {
            r.excluded.emplace_back(to_string(g), v.size());
        }
    }
    const std::size_t m = kept.size();
    r.cucconi_p.assign(m, std::vector<double>(m, 1.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
            const std::uint64_t stream = derive_seed(seed, i * m + j);
            const double p = cucconi(*kept[i], *kept[j], permutations, stream).p_value;
            r.cucconi_p[i][j] = r.cucconi_p[j][i] = p;
        }
    if (m >= 2) {
        std::vector<std::vector<double>> groups;
        for (const auto* v : kept)
            groups.push_back(*v);
        try {
            r.kruskal = kruskal_wallis(groups);
        } catch (const ValidationError&) {
            r.kruskal.reset();
        }
    }
    return r;
}

} // namespace cxlab
