#include "cxlab/experiments.hpp"

#include "cxlab/assembly.hpp"
#include "cxlab/error.hpp"
#include "cxlab/lz.hpp"
#include "cxlab/parallel.hpp"
#include "cxlab/rng.hpp"
#include "cxlab/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cxlab {

const std::vector<std::string>& zbc_measures()
{
    static const std::vector<std::string> names{"lzw", "ai", "entropy_rate", "entropy", "bdm"};
    return names;
}

ZbcReport run_zbc_permutations(const ZbcConfig& config)
{
    if (config.trials < 2)
        throw ValidationError("zbc experiment needs at least 2 trials");
    if (config.length == 0)
        throw ValidationError("empty sequence");

    ZbcReport r;
    r.config = config;
    const std::size_t t = config.trials;
    std::vector<double> lzw(t), ai(t), rate(t), h(t), bdm_v(t);
    BdmOptions bo;
    bo.estimator = config.bdm_estimator;
    bo.block_size = config.bdm_block;
    if (bo.estimator == BdmEstimator::Ctm)
        throw ValidationError("zbc strings are ternary; use lzw_bits or entropy_bits");

    parallel_for(t, [&](std::size_t i) {
        GeneratorSpec spec;
        spec.kind = GeneratorKind::ZbcPermutation;
        spec.length = config.length;
        spec.seed = config.seed;
        spec.trial_index = i;
        spec.exact_shuffle = config.exact_shuffle;
        const Sequence x = generate(spec);
        const auto s = x.symbols();
        lzw[i] = static_cast<double>(lzw_metrics(s).c2);
        ai[i] = static_cast<double>(ai_estimate(s));
        rate[i] = entropy_rate(s, config.entropy_window).rate;
        h[i] = block_entropy(s, 1);
        bdm_v[i] = bdm_bits(s, bo);
    });
    r.values = {{"lzw", std::move(lzw)},
                {"ai", std::move(ai)},
                {"entropy_rate", std::move(rate)},
                {"entropy", std::move(h)},
                {"bdm", std::move(bdm_v)}};

    const std::pair<const char*, const char*> pairs[] = {
        {"lzw", "ai"}, {"lzw", "bdm"}, {"ai", "bdm"}, {"lzw", "entropy_rate"}, {"ai", "entropy_rate"}};
    for (const auto& [a, b] : pairs) {
        NamedTTest nt{a, b, std::nullopt, {}};
        try {
            nt.test = welch_t(r.values[a], r.values[b]);
        } catch (const ValidationError& e) {
            nt.skipped = e.what();
        }
        r.welch.push_back(std::move(nt));
    }
    for (const auto& m : zbc_measures()) {
        MeasureFits mf{m, {}, {}};
        try {
            mf.fits = rank_fits(r.values[m]);
            if (mf.fits.empty())
                mf.skipped = "no family accepts the data";
        } catch (const ValidationError& e) {
            mf.skipped = e.what();
        }
        r.fits.push_back(std::move(mf));
    }
    return r;
}

std::string_view to_string(GrowingKind k) noexcept
{
    switch (k) {
    case GrowingKind::Random: return "random";
    case GrowingKind::Pattern5: return "pattern5";
    case GrowingKind::Pattern10: return "pattern10";
    case GrowingKind::Zbc: return "zbc";
    }
    return "?";
}

GrowingKind parse_growing_kind(std::string_view name)
{
    for (GrowingKind k : {GrowingKind::Random, GrowingKind::Pattern5, GrowingKind::Pattern10, GrowingKind::Zbc})
        if (to_string(k) == name)
            return k;
    throw ValidationError("unknown growing kind '" + std::string(name) + "' (random, pattern5, pattern10, zbc)");
}

namespace {

GeneratorSpec growing_spec(const GrowingConfig& c, std::size_t trial)
{
    GeneratorSpec s;
    s.length = c.max_length;
    s.seed = c.seed;
    s.trial_index = trial;
    switch (c.kind) {
    case GrowingKind::Random:
        s.kind = GeneratorKind::UniformRandom;
        s.alphabet_size = c.random_alphabet;
        break;
    case GrowingKind::Pattern5:
        s.kind = GeneratorKind::Pattern;
        s.block = "ABCDE";
        break;
    case GrowingKind::Pattern10:
        s.kind = GeneratorKind::Pattern;
        s.block = "ABCDEFGHIJ";
        break;
    case GrowingKind::Zbc:
        s.kind = GeneratorKind::ZbcPermutation;
        break;
    }
    return s;
}

std::vector<std::size_t> build_grid(const GrowingConfig& c, const std::vector<std::size_t>& checkpoints)
{
    std::set<std::size_t> grid;
    const std::size_t dense = std::min(c.dense_until, c.max_length);
    for (std::size_t n = 1; n <= dense; ++n)
        grid.insert(n);
    std::vector<std::size_t> anchors{dense};
    for (std::size_t cp : checkpoints)
        if (cp > dense)
            anchors.push_back(cp);
    if (anchors.back() != c.max_length)
        anchors.push_back(c.max_length);
    for (std::size_t i = 0; i + 1 < anchors.size(); ++i) {
        const std::size_t p = anchors[i], q = anchors[i + 1];
        const std::size_t steps = std::max<std::size_t>(1, c.segment_points);
        for (std::size_t k = 1; k <= steps; ++k)
            grid.insert(p + (q - p) * k / steps);
    }
    grid.insert(checkpoints.begin(), checkpoints.end());
    return {grid.begin(), grid.end()};
}

} // namespace

GrowingReport run_growing(const GrowingConfig& config)
{
    if (config.max_length < 8)
        throw ValidationError("growing experiment needs max_length >= 8");
    if (config.trials == 0)
        throw ValidationError("growing experiment needs at least 1 trial");

    GrowingReport r;
    r.config = config;
    for (std::size_t cp : config.checkpoints)
        if (cp <= config.max_length)
            r.checkpoints.push_back(cp);
    std::sort(r.checkpoints.begin(), r.checkpoints.end());
    r.grid = build_grid(config, r.checkpoints);
    r.deterministic = is_deterministic(growing_spec(config, 0));

    const std::size_t g = r.grid.size();
    const std::size_t computed = r.deterministic ? 1 : config.trials;
    // Row-major [trial][grid index].
    std::vector<double> ai(computed * g), lzw(computed * g), rate(computed * g);
    parallel_for(computed, [&](std::size_t t) {
        const Sequence x = generate(growing_spec(config, t));
        const auto s = x.symbols();
        for (std::size_t i = 0; i < g; ++i) {
            const auto prefix = s.first(r.grid[i]);
            ai[t * g + i] = static_cast<double>(ai_estimate(prefix));
            lzw[t * g + i] = static_cast<double>(lzw_metrics(prefix).c2);
            rate[t * g + i] = entropy_rate(prefix, config.entropy_window).rate;
        }
    });
    auto row = [&](const std::vector<double>& v, std::size_t t) {
        return std::span<const double>(v.data() + t * g, g);
    };

    for (const auto& [name, data] : {std::pair{"ai", &ai}, std::pair{"lzw", &lzw}, std::pair{"entropy_rate", &rate}}) {
        std::vector<double> mean(g, 0.0);
        for (std::size_t t = 0; t < computed; ++t)
            for (std::size_t i = 0; i < g; ++i)
                mean[i] += (*data)[t * g + i];
        for (double& m : mean)
            m /= static_cast<double>(computed);
        r.mean_series[name] = std::move(mean);
    }

    // Spearman per trial and checkpoint, reduced in trial order.
    const std::size_t nc = r.checkpoints.size();
    std::vector<double> rho_lzw(computed * nc, std::nan("")), rho_rate(computed * nc, std::nan(""));
    parallel_for(computed, [&](std::size_t t) {
        for (std::size_t c = 0; c < nc; ++c) {
            const auto m = static_cast<std::size_t>(
                std::upper_bound(r.grid.begin(), r.grid.end(), r.checkpoints[c]) - r.grid.begin());
            const auto a = row(ai, t).first(m);
            try {
                rho_lzw[t * nc + c] = spearman(a, row(lzw, t).first(m));
            } catch (const ValidationError&) {
            }
            try {
                rho_rate[t * nc + c] = spearman(a, row(rate, t).first(m));
            } catch (const ValidationError&) {
            }
        }
    });
    for (std::size_t c = 0; c < nc; ++c) {
        CheckpointCorrelation cc;
        cc.length = r.checkpoints[c];
        double sl = 0.0, sr = 0.0;
        for (std::size_t t = 0; t < computed; ++t) {
            if (!std::isnan(rho_lzw[t * nc + c])) {
                sl += rho_lzw[t * nc + c];
                ++cc.lzw_trials;
            }
            if (!std::isnan(rho_rate[t * nc + c])) {
                sr += rho_rate[t * nc + c];
                ++cc.entropy_trials;
            }
        }
        if (cc.lzw_trials)
            cc.lzw = sl / static_cast<double>(cc.lzw_trials);
        if (cc.entropy_trials)
            cc.entropy_rate = sr / static_cast<double>(cc.entropy_trials);
        const std::size_t scale = r.deterministic ? config.trials : 1;
        cc.lzw_trials *= scale;
        cc.entropy_trials *= scale;
        r.correlations.push_back(cc);
    }

    std::vector<double> lens, means, sds;
    for (std::size_t i = 0; i < g; ++i) {
        RatioStats rs;
        rs.length = r.grid[i];
        std::vector<double> v;
        for (std::size_t t = 0; t < computed; ++t) {
            const double a = ai[t * g + i];
            if (a > 1.0)
                v.push_back(std::log(lzw[t * g + i]) / std::log(a));
        }
        if (r.deterministic && !v.empty())
            v.assign(config.trials, v.front());
        rs.n = v.size();
        if (!v.empty()) {
            const Summary s = summarize(v);
            rs.mean = s.mean;
            rs.sd = s.sd;
            lens.push_back(static_cast<double>(rs.length));
            means.push_back(s.mean);
            sds.push_back(s.sd);
        }
        r.log_ratio.push_back(rs);
    }
    try {
        r.ratio_mean_fit = fit_power_law(lens, means);
    } catch (const ValidationError&) {
    }
    try {
        r.ratio_sd_fit = fit_power_law(lens, sds);
    } catch (const ValidationError&) {
    }

    for (std::size_t cp : r.checkpoints) {
        const auto i = static_cast<std::size_t>(std::lower_bound(r.grid.begin(), r.grid.end(), cp) - r.grid.begin());
        std::map<std::pair<double, double>, std::size_t> cells;
        for (std::size_t t = 0; t < computed; ++t)
            cells[{ai[t * g + i], lzw[t * g + i]}] += r.deterministic ? config.trials : 1;
        for (const auto& [key, count] : cells)
            r.density.push_back({cp, key.first, key.second, count});
    }
    return r;
}

MolecularReport run_molecular(const MolecularConfig& config)
{
    MolecularReport r;
    r.config = config;
    r.ingest = ingest_csv(config.csv_path, config.columns);
    auto& records = r.ingest.records;
    profile_records(records);

    const bool has_ms2 = config.columns.has("ms2");
    const bool has_ma = config.columns.has("ma");
    const bool has_inchi = config.columns.has("inchi");

    std::vector<std::string> relation_measures;
    if (has_ma)
        relation_measures.push_back("ma");
    if (has_inchi) {
        relation_measures.push_back("payload_length");
        relation_measures.push_back("lzw");
    }
    std::vector<double> taus = config.quantiles;
    if (std::find(taus.begin(), taus.end(), kDefaultMs2Quantile) == taus.end())
        taus.push_back(kDefaultMs2Quantile);
    if (!has_ms2) {
        r.skipped["ms2_relation"] = "no ms2 column mapped";
    } else {
        for (const auto& m : relation_measures) {
            try {
                r.ms2.push_back(ms2_relation(records, m, taus));
            } catch (const ValidationError& e) {
                r.skipped["ms2_relation:" + m] = e.what();
            }
        }
    }

    if (has_ma && has_inchi) {
        std::vector<double> xs, ys;
        for (const auto& rec : records)
            if (rec.ma && rec.inchi) {
                xs.push_back(static_cast<double>(rec.payload_length));
                ys.push_back(*rec.ma);
            }
        try {
            r.ma_vs_length = ols(xs, ys);
            r.ma_length_pearson = pearson(xs, ys);
        } catch (const ValidationError& e) {
            r.skipped["ma_vs_length"] = e.what();
        }
    } else {
        r.skipped["ma_vs_length"] = "needs ma and inchi columns";
    }

    const QuantileLine* ma_line = nullptr;
    for (const auto& rel : r.ms2)
        if (rel.measure == "ma")
            for (const auto& q : rel.quantiles)
                if (q.tau == kDefaultMs2Quantile)
                    ma_line = &q.line;
    auto threshold = [&](const std::string& measure, double value, const QuantileLine* line) {
        try {
            r.thresholds.push_back(threshold_analysis(records, measure, value, line));
        } catch (const ValidationError& e) {
            r.skipped["threshold:" + measure] = e.what();
        }
    };
    if (has_ma)
        threshold("ma", config.ma_threshold, ma_line);
    if (has_inchi)
        threshold("payload_length", config.length_threshold, nullptr);

    std::vector<std::string> measures;
    if (has_ma)
        measures.push_back("ma");
    if (has_ms2)
        measures.push_back("ms2");
    if (has_inchi)
        for (const char* m : {"payload_length", "lzw", "ai", "entropy", "bdm"})
            measures.emplace_back(m);
    for (std::size_t i = 0; i < measures.size(); ++i)
        r.separation.push_back(group_separation(records, measures[i], config.permutations, derive_seed(config.seed, i)));

    std::vector<const MoleculeRecord*> labelled;
    std::vector<int> labels;
    for (const auto& rec : records)
        if (const auto l = life_label(rec.group)) {
            labelled.push_back(&rec);
            labels.push_back(*l);
        }
    std::vector<std::vector<std::string>> feature_sets;
    for (const auto& m : measures)
        feature_sets.push_back({m});
    if (measures.size() > 1)
        feature_sets.push_back(measures);
    for (const auto& set : feature_sets) {
        KnnSummary ks;
        for (const auto& f : set)
            ks.features += (ks.features.empty() ? "" : "+") + f;
        std::vector<std::vector<double>> x;
        std::vector<int> y;
        for (std::size_t i = 0; i < labelled.size(); ++i) {
            std::vector<double> row;
            for (const auto& f : set)
                if (const auto v = measure_value(*labelled[i], f))
                    row.push_back(*v);
            if (row.size() == set.size()) {
                x.push_back(std::move(row));
                y.push_back(labels[i]);
            }
        }
        try {
            ks.result = knn_classify(x, y, config.knn_k, true);
            ks.roc = roc_curve(ks.result->scores, y);
        } catch (const ValidationError& e) {
            ks.result.reset();
            ks.skipped = e.what();
        }
        r.knn.push_back(std::move(ks));
    }
    return r;
}

} // namespace cxlab
