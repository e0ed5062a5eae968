#include "cxlab/report.hpp"

#include "cxlab/csv.hpp"
#include "cxlab/error.hpp"
#include "cxlab/parallel.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace cxlab {

namespace fs = std::filesystem;

namespace {

template <class T>
Json opt(const std::optional<T>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

std::string num(double v)
{
    if (std::isnan(v))
        return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const fs::path& p)
{
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw ValidationError("cannot write " + p.string());
    return out;
}

fs::path prepare(const std::string& dir)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw ValidationError("cannot create output directory " + dir);
    return fs::path(dir);
}

Json runtime(const RunInfo& info)
{
    if (info.stable)
        return nullptr;
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return Json{{"elapsed_seconds", info.elapsed_seconds}, {"timestamp", stamp}, {"threads", worker_count()}};
}

void write_json(const fs::path& dir, Json j, const RunInfo& info)
{
    j["runtime"] = runtime(info);
    auto out = open_out(dir / "report.json");
    out << j.dump(2) << '\n';
}

Json summary_json(const Summary& s)
{
    return {{"n", s.n},     {"mean", s.mean}, {"sd", s.sd},   {"min", s.min},
            {"q1", s.q1},   {"median", s.median}, {"q3", s.q3}, {"max", s.max}};
}

Json ttest_json(const TTest& t) { return {{"t", t.t}, {"df", t.df}, {"p_value", t.p_value}}; }

Json line_json(const QuantileLine& q) { return {{"intercept", q.intercept}, {"slope", q.slope}, {"loss", q.loss}}; }

Json linear_json(const LinearFit& f)
{
    return {{"intercept", f.intercept}, {"slope", f.slope}, {"r_squared", f.r_squared}};
}

Json power_json(const std::optional<PowerLaw>& p)
{
    if (!p)
        return nullptr;
    return {{"coefficient", p->coefficient}, {"exponent", p->exponent}, {"r_squared", p->r_squared}};
}

std::string sanitize(std::string s)
{
    for (char& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-')
            c = '_';
    return s;
}

} // namespace

Json to_json(const AssemblyResult& r)
{
    Json dict = Json::array();
    for (const auto& e : r.dictionary) {
        if (e.construction.is_basis)
            dict.push_back({{"id", e.id}, {"basis", std::string(1, r.labels.empty() ? char('0' + e.construction.symbol)
                                                                                   : r.labels[e.construction.symbol])}});
        else
            dict.push_back({{"id", e.id}, {"join", {e.construction.left, e.construction.right}}});
    }
    Json j{{"method", std::string(to_string(r.method))},
           {"ai", r.ai},
           {"k_ai_bits", r.k_ai_bits},
           {"final_id", r.final_id},
           {"dictionary", std::move(dict)}};
    if (r.method == AssemblyMethod::Exact)
        j["search_nodes"] = r.search_nodes;
    return j;
}

Json to_json(const ParseResult& p)
{
    Json phrases = Json::array();
    for (const auto& ph : p.dictionary) {
        std::string text;
        for (Symbol s : ph.symbols)
            text += p.labels.empty() ? static_cast<char>('0' + s) : p.labels[s];
        phrases.push_back({{"id", ph.id}, {"phrase", text}});
    }
    return {{"kind", p.kind == ParseKind::Lzw ? "lzw" : "lz_prefix"},
            {"c1", p.c1()},
            {"c2", p.c2()},
            {"compressed_bits", p.compressed_bits},
            {"codewords", p.codewords},
            {"dictionary", std::move(phrases)}};
}

Json to_json(const EntropyReport& r)
{
    return {{"block_size", r.block_size},
            {"mode", r.mode == BlockMode::Sliding ? "sliding" : "non_overlapping"},
            {"block_count", r.block_count},
            {"h_symbol", r.h_symbol},
            {"h_block", r.h_block},
            {"distinct_blocks", r.probabilities.size()}};
}

Json to_json(const HierarchyReport& r)
{
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        const char* status = c.status == CheckStatus::Pass ? "pass" : c.status == CheckStatus::Fail ? "fail" : "skipped";
        Json cj{{"name", c.name}, {"status", status}};
        if (c.status != CheckStatus::Skipped) {
            cj["lhs"] = c.lhs;
            cj["rhs"] = c.rhs;
            cj["constant"] = c.constant;
        }
        if (!c.reason.empty())
            cj["reason"] = c.reason;
        checks.push_back(std::move(cj));
    }
    return {{"length", r.length},       {"k_ctm", opt(r.k_ctm)},
            {"bdm_ctm", opt(r.bdm_ctm)}, {"bdm_entropy", r.bdm_entropy},
            {"block_entropy_total", r.block_entropy_total},
            {"lzw_bits", r.lzw_bits},   {"ai", r.ai},
            {"ai_exact", r.ai_exact},   {"k_ai_bits", r.k_ai_bits},
            {"checks", std::move(checks)}};
}

Json to_json(const FitReport& f)
{
    return {{"family", std::string(to_string(f.family))},
            {"params", f.params},
            {"mae", f.mae},
            {"rmse", f.rmse},
            {"ks_stat", f.ks_stat},
            {"log_likelihood", f.log_likelihood}};
}

Json to_json(const ZbcReport& r)
{
    const auto& c = r.config;
    Json j;
    j["experiment"] = "zbc";
    j["config"] = {{"length", c.length},
                   {"trials", c.trials},
                   {"seed", c.seed},
                   {"exact_shuffle", c.exact_shuffle},
                   {"entropy_window", c.entropy_window},
                   {"ai_method", "best_of"},
                   {"bdm_estimator", std::string(to_string(c.bdm_estimator))},
                   {"bdm_block", c.bdm_block}};
    Json summaries;
    for (const auto& m : zbc_measures())
        summaries[m] = summary_json(summarize(r.values.at(m)));
    j["summaries"] = std::move(summaries);
    Json welch = Json::array();
    for (const auto& w : r.welch) {
        Json wj{{"a", w.a}, {"b", w.b}};
        if (w.test)
            wj.update(ttest_json(*w.test));
        else
            wj["skipped"] = w.skipped;
        welch.push_back(std::move(wj));
    }
    j["welch"] = std::move(welch);
    Json fits;
    for (const auto& f : r.fits) {
        if (f.fits.empty()) {
            fits[f.measure] = {{"skipped", f.skipped}};
            continue;
        }
        Json all = Json::array();
        for (const auto& fr : f.fits)
            all.push_back(to_json(fr));
        fits[f.measure] = {{"best", std::string(to_string(f.fits.front().family))}, {"fits", std::move(all)}};
    }
    j["fits"] = std::move(fits);
    return j;
}

Json to_json(const GrowingReport& r)
{
    const auto& c = r.config;
    Json j;
    j["experiment"] = "growing";
    j["config"] = {{"kind", std::string(to_string(c.kind))},
                   {"max_length", c.max_length},
                   {"trials", c.trials},
                   {"seed", c.seed},
                   {"random_alphabet", c.random_alphabet},
                   {"entropy_window", c.entropy_window},
                   {"dense_until", c.dense_until},
                   {"segment_points", c.segment_points},
                   {"ai_method", "best_of"},
                   {"checkpoints", r.checkpoints}};
    j["deterministic"] = r.deterministic;
    j["grid_points"] = r.grid.size();
    Json corr = Json::array();
    for (const auto& cc : r.correlations)
        corr.push_back({{"length", cc.length},
                        {"spearman_lzw", opt(cc.lzw)},
                        {"spearman_entropy_rate", opt(cc.entropy_rate)},
                        {"lzw_trials", cc.lzw_trials},
                        {"entropy_trials", cc.entropy_trials}});
    j["spearman_vs_ai"] = std::move(corr);
    Json ratio = Json::array();
    for (const auto& rs : r.log_ratio)
        if (std::find(r.checkpoints.begin(), r.checkpoints.end(), rs.length) != r.checkpoints.end())
            ratio.push_back({{"length", rs.length}, {"n", rs.n}, {"mean", opt(rs.mean)}, {"sd", opt(rs.sd)}});
    j["log_ratio_checkpoints"] = std::move(ratio);
    j["log_ratio_mean_power_law"] = power_json(r.ratio_mean_fit);
    j["log_ratio_sd_power_law"] = power_json(r.ratio_sd_fit);
    return j;
}

Json to_json(const MolecularReport& r)
{
    const auto& c = r.config;
    Json j;
    j["experiment"] = "molecular";
    Json cols;
    for (const auto& [f, col] : c.columns.columns)
        cols[f] = col;
    j["config"] = {{"csv", c.csv_path},
                   {"columns", std::move(cols)},
                   {"quantiles", c.quantiles},
                   {"ma_threshold", c.ma_threshold},
                   {"length_threshold", c.length_threshold},
                   {"permutations", c.permutations},
                   {"seed", c.seed},
                   {"knn_k", c.knn_k}};
    Json warnings = Json::array();
    for (const auto& w : r.ingest.warnings)
        warnings.push_back({{"row", w.row}, {"message", w.message}});
    j["ingest"] = {{"records", r.ingest.records.size()}, {"skipped", r.ingest.skipped}, {"warnings", std::move(warnings)}};

    Json ms2 = Json::array();
    for (const auto& rel : r.ms2) {
        Json qs = Json::array();
        for (const auto& q : rel.quantiles) {
            Json qj = line_json(q.line);
            qj["tau"] = q.tau;
            qs.push_back(std::move(qj));
        }
        ms2.push_back({{"measure", rel.measure},
                       {"n", rel.n},
                       {"pearson", rel.pearson},
                       {"ols", linear_json(rel.ols)},
                       {"quantiles", std::move(qs)}});
    }
    j["ms2_relation"] = std::move(ms2);
    j["ma_vs_payload_length"] = r.ma_vs_length
                                    ? Json{{"pearson", opt(r.ma_length_pearson)}, {"ols", linear_json(*r.ma_vs_length)}}
                                    : Json(nullptr);
    Json th = Json::array();
    for (const auto& t : r.thresholds)
        th.push_back({{"measure", t.measure},
                      {"threshold", t.threshold},
                      {"tp", t.tp},
                      {"fp", t.fp},
                      {"tn", t.tn},
                      {"fn", t.fn},
                      {"precision", t.precision},
                      {"recall", t.recall},
                      {"accuracy", t.accuracy},
                      {"base_rate", t.base_rate},
                      {"ms2_threshold", opt(t.ms2_threshold)}});
    j["thresholds"] = std::move(th);
    Json sep = Json::array();
    for (const auto& s : r.separation) {
        Json groups = Json::array(), excluded = Json::array();
        for (const auto& [g, n] : s.groups)
            groups.push_back({{"group", g}, {"n", n}});
        for (const auto& [g, n] : s.excluded)
            excluded.push_back({{"group", g}, {"n", n}});
        sep.push_back({{"measure", s.measure},
                       {"groups", std::move(groups)},
                       {"excluded", std::move(excluded)},
                       {"cucconi_p", s.cucconi_p},
                       {"kruskal_wallis",
                        s.kruskal ? Json{{"h", s.kruskal->h}, {"df", s.kruskal->df}, {"p_value", s.kruskal->p_value}}
                                  : Json(nullptr)}});
    }
    j["group_separation"] = std::move(sep);
    Json knn = Json::array();
    for (const auto& k : r.knn) {
        if (k.result)
            knn.push_back({{"features", k.features},
                           {"n", k.result->predictions.size()},
                           {"accuracy", k.result->accuracy},
                           {"auc", k.result->auc}});
        else
            knn.push_back({{"features", k.features}, {"skipped", k.skipped}});
    }
    j["knn"] = std::move(knn);
    Json skipped;
    for (const auto& [k, v] : r.skipped)
        skipped[k] = v;
    j["skipped"] = skipped.is_null() ? Json::object() : skipped;
    return j;
}

void write_report(const std::string& dir, const ZbcReport& r, const RunInfo& info)
{
    const fs::path d = prepare(dir);
    write_json(d, to_json(r), info);
    const auto& names = zbc_measures();

    auto values = open_out(d / "values.csv");
    std::vector<std::string> row{"trial"};
    row.insert(row.end(), names.begin(), names.end());
    write_csv_row(values, row);
    for (std::size_t t = 0; t < r.config.trials; ++t) {
        row = {std::to_string(t)};
        for (const auto& m : names)
            row.push_back(num(r.values.at(m)[t]));
        write_csv_row(values, row);
    }

    auto box = open_out(d / "boxplot.csv");
    write_csv_row(box, {"measure", "min", "q1", "median", "q3", "max", "mean", "sd"});
    for (const auto& m : names) {
        const Summary s = summarize(r.values.at(m));
        write_csv_row(box, {m, num(s.min), num(s.q1), num(s.median), num(s.q3), num(s.max), num(s.mean), num(s.sd)});
    }

    auto fits = open_out(d / "fits.csv");
    write_csv_row(fits, {"measure", "family", "param1", "param2", "mae", "rmse", "ks_stat"});
    for (const auto& f : r.fits)
        for (const auto& fr : f.fits)
            write_csv_row(fits, {f.measure, std::string(to_string(fr.family)), num(fr.params.at(0)),
                                 num(fr.params.at(1)), num(fr.mae), num(fr.rmse), num(fr.ks_stat)});
}

void write_report(const std::string& dir, const GrowingReport& r, const RunInfo& info)
{
    const fs::path d = prepare(dir);
    write_json(d, to_json(r), info);

    auto series = open_out(d / "series.csv");
    write_csv_row(series, {"length", "mean_ai", "mean_lzw", "mean_entropy_rate", "ratio_n", "ratio_mean", "ratio_sd"});
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
        const auto& rs = r.log_ratio[i];
        write_csv_row(series, {std::to_string(r.grid[i]), num(r.mean_series.at("ai")[i]), num(r.mean_series.at("lzw")[i]),
                               num(r.mean_series.at("entropy_rate")[i]), std::to_string(rs.n),
                               rs.mean ? num(*rs.mean) : "", rs.sd ? num(*rs.sd) : ""});
    }
    auto corr = open_out(d / "correlations.csv");
    write_csv_row(corr, {"length", "spearman_lzw", "spearman_entropy_rate"});
    for (const auto& c : r.correlations)
        write_csv_row(corr, {std::to_string(c.length), c.lzw ? num(*c.lzw) : "",
                             c.entropy_rate ? num(*c.entropy_rate) : ""});
    auto density = open_out(d / "density.csv");
    write_csv_row(density, {"checkpoint", "ai", "lzw", "count"});
    for (const auto& c : r.density)
        write_csv_row(density, {std::to_string(c.checkpoint), num(c.ai), num(c.lzw), std::to_string(c.count)});
}

void write_report(const std::string& dir, const MolecularReport& r, const RunInfo& info)
{
    const fs::path d = prepare(dir);
    write_json(d, to_json(r), info);

    auto recs = open_out(d / "records.csv");
    const std::vector<std::string> measures{"payload_length", "lzw", "ai", "entropy", "bdm"};
    std::vector<std::string> row{"id", "group", "ma", "ms2"};
    row.insert(row.end(), measures.begin(), measures.end());
    write_csv_row(recs, row);
    for (const auto& rec : r.ingest.records) {
        row = {rec.id, std::string(to_string(rec.group)), rec.ma ? num(*rec.ma) : "", rec.ms2_peaks ? num(*rec.ms2_peaks) : ""};
        for (const auto& m : measures) {
            const auto v = measure_value(rec, m);
            row.push_back(v ? num(*v) : "");
        }
        write_csv_row(recs, row);
    }

    auto quant = open_out(d / "quantile_lines.csv");
    write_csv_row(quant, {"measure", "tau", "intercept", "slope", "loss"});
    auto resid = open_out(d / "residuals.csv");
    write_csv_row(resid, {"measure", "tau", "id", "residual"});
    for (const auto& rel : r.ms2)
        for (const auto& q : rel.quantiles) {
            write_csv_row(quant, {rel.measure, num(q.tau), num(q.line.intercept), num(q.line.slope), num(q.line.loss)});
            for (std::size_t i = 0; i < q.residuals.size(); ++i)
                write_csv_row(resid, {rel.measure, num(q.tau), rel.ids[i], num(q.residuals[i])});
        }

    for (const auto& s : r.separation) {
        auto heat = open_out(d / ("heatmap_" + sanitize(s.measure) + ".csv"));
        row = {"group"};
        for (const auto& [g, n] : s.groups)
            row.push_back(g);
        write_csv_row(heat, row);
        for (std::size_t i = 0; i < s.groups.size(); ++i) {
            row = {s.groups[i].first};
            for (double p : s.cucconi_p[i])
                row.push_back(num(p));
            write_csv_row(heat, row);
        }
    }
    for (const auto& k : r.knn) {
        if (!k.result)
            continue;
        auto roc = open_out(d / ("roc_" + sanitize(k.features) + ".csv"));
        write_csv_row(roc, {"threshold", "fpr", "tpr"});
        for (const auto& p : k.roc)
            write_csv_row(roc, {std::isinf(p.threshold) ? "inf" : num(p.threshold), num(p.fpr), num(p.tpr)});
    }
}

} // namespace cxlab
