// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any fail.
//
// The real-data molecular conditions run only when CXLAB_REAL_CSV and
// CXLAB_REAL_COLUMNS are set.

#include "cxlab/assembly.hpp"
#include "cxlab/bdm.hpp"
#include "cxlab/ctm.hpp"
#include "cxlab/experiments.hpp"
#include "cxlab/lz.hpp"
#include "cxlab/molecular.hpp"
#include "cxlab/report.hpp"
#include "cxlab/rng.hpp"
#include "cxlab/stats.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace cxlab;

namespace {

using Clock = std::chrono::steady_clock;
using V = std::vector<double>;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [violated: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const char* title, double budget_seconds, const std::function<void(Outcome&)>& body)
{
    Outcome o;
    const auto t0 = Clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    o.require(secs < budget_seconds, "runtime " + std::to_string(secs) + " s over budget");
    std::printf("[%s] C%d %s:%s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.str().c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
}

std::string fmt(double v, int digits = 4)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

const CtmTable& table22()
{
    static const CtmTable t = ctm_build(MachineSpace{2, 2, 500});
    return t;
}

void c1(Outcome& o)
{
    const auto abra = Sequence::from_text("abracadabra");
    const auto z16 = Sequence::from_text(std::string(16, 'z'));
    const auto ai_abra = ai_exact(abra).ai;
    const auto lzw_abra = lzw_encode(abra).c2();
    const auto ai_z = ai_exact(z16).ai;
    const auto factors = lz_prefix_parse(z16).c2();
    o.detail << " Ai(abracadabra)=" << ai_abra << " LZW(abracadabra)=" << lzw_abra << " Ai(z^16)=" << ai_z
             << " lz_prefix(z^16)=" << factors;
    o.require(ai_abra == 7, "Ai(abracadabra) == 7");
    o.require(lzw_abra == 9, "LZW(abracadabra) == 9");
    o.require(ai_z == 4, "Ai(z^16) == 4");
    o.require(factors == 5, "lz_prefix(z^16) == 5");
}

void c2(Outcome& o)
{
    std::size_t total = 0, equal = 0, violations = 0;
    auto visit = [&](const Sequence& x) {
        const auto exact = ai_exact(x).ai;
        const auto heur = ai_estimate(x.symbols());
        ++total;
        equal += heur == exact;
        violations += heur < exact;
    };
    for (std::size_t n = 1; n <= 12; ++n)
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
            std::vector<Symbol> v(n);
            for (std::size_t i = 0; i < n; ++i)
                v[i] = (bits >> i) & 1;
            visit(Sequence(v, 2));
        }
    const std::size_t binary = total;
    Rng rng(0x7E57);
    for (int t = 0; t < 1000; ++t) {
        std::vector<Symbol> v(1 + rng.below(12));
        for (auto& s : v)
            s = static_cast<Symbol>(rng.below(3));
        visit(Sequence(v, 3));
    }
    o.detail << " " << binary << " binary + " << total - binary << " ternary strings, violations=" << violations
             << ", equality rate=" << fmt(static_cast<double>(equal) / static_cast<double>(total));
    o.require(violations == 0, "heuristic >= exact everywhere");
}

void c3(Outcome& o)
{
    for (auto kind : {GrowingKind::Pattern5, GrowingKind::Pattern10}) {
        GrowingConfig g;
        g.kind = kind;
        g.trials = 1000;
        g.seed = 1;
        const auto r = run_growing(g);
        double worst = 1.0;
        bool all = true;
        o.detail << " " << to_string(kind) << " rho=[";
        for (std::size_t i = 0; i < r.correlations.size(); ++i) {
            const auto& c = r.correlations[i];
            o.detail << (i ? "," : "") << (c.lzw ? fmt(*c.lzw, 3) : "na");
            const bool ok = c.lzw && std::abs(*c.lzw - 1.0) <= 0.005;
            all = all && ok;
            if (c.lzw)
                worst = std::min(worst, *c.lzw);
        }
        o.detail << "]";
        o.require(all, std::string(to_string(kind)) + " rho within 1.00 +- 0.005 at every checkpoint (min " +
                           fmt(worst) + ")");
    }

    GrowingConfig g;
    g.kind = GrowingKind::Random;
    g.trials = 1000;
    g.seed = 1;
    const auto r = run_growing(g);
    o.detail << " random rho=[";
    bool monotone = true;
    std::optional<double> prev;
    for (std::size_t i = 0; i < r.correlations.size(); ++i) {
        const auto& c = r.correlations[i];
        o.detail << (i ? "," : "") << (c.lzw ? fmt(*c.lzw, 4) : "na");
        if (c.lzw && prev && *c.lzw < *prev - 0.03)
            monotone = false;
        if (c.lzw)
            prev = c.lzw;
    }
    o.detail << "]";
    const auto& last = r.correlations.back();
    o.require(last.length == 3000, "last checkpoint is 3000");
    o.require(last.lzw && *last.lzw >= 0.99, "random rho >= 0.99 at 3000");
    o.require(monotone, "random rho non-decreasing within 0.03");
    o.detail << " entropy-rate rho@3000=" << (last.entropy_rate ? fmt(*last.entropy_rate) : "na");
    o.require(last.entropy_rate && *last.entropy_rate >= 0.98, "entropy-rate rho >= 0.98 at 3000");
}

void c4(Outcome& o)
{
    GrowingConfig g;
    g.kind = GrowingKind::Zbc;
    g.max_length = 200;
    g.trials = 10'000;
    g.seed = 1;
    const auto r = run_growing(g);
    std::map<std::size_t, RatioStats> at;
    for (const auto& s : r.log_ratio)
        at[s.length] = s;
    const auto& s20 = at.at(20);
    const auto& s200 = at.at(200);
    o.require(s20.sd && s200.sd, "sd defined at 20 and 200");
    if (!s20.sd || !s200.sd)
        return;
    o.detail << " sd@20=" << fmt(*s20.sd) << " sd@200=" << fmt(*s200.sd);
    o.require(*s200.sd < 0.5 * *s20.sd, "sd(200) < 0.5 sd(20)");

    std::vector<double> means;
    for (const auto& s : r.log_ratio)
        if (s.mean)
            means.push_back(*s.mean);
    o.require(means.size() >= 5, "five checkpoints with a mean");
    if (means.size() < 5)
        return;
    double worst = 0.0;
    o.detail << " mean changes=[";
    for (std::size_t i = means.size() - 4; i < means.size(); ++i) {
        const double d = std::abs(means[i] - means[i - 1]);
        o.detail << (i == means.size() - 4 ? "" : ",") << fmt(d, 2);
        worst = std::max(worst, d);
    }
    o.detail << "]";
    o.require(worst < 0.01, "successive mean change < 0.01 over the last 5 checkpoints");
}

void c5(Outcome& o)
{
    ZbcConfig z;
    z.length = 15;
    z.trials = 10'000;
    z.seed = 1;
    const auto r = run_zbc_permutations(z);
    auto welch = [&](const std::string& a, const std::string& b) -> std::optional<TTest> {
        for (const auto& w : r.welch)
            if ((w.a == a && w.b == b) || (w.a == b && w.b == a))
                return w.test;
        return std::nullopt;
    };
    const auto la = welch("lzw", "ai"), lb = welch("lzw", "bdm"), ab = welch("ai", "bdm");
    o.require(la && lb && ab, "welch pairs present");
    if (!la || !lb || !ab)
        return;
    o.detail << " welch lzw-ai t=" << fmt(la->t) << " p=" << fmt(la->p_value) << "; lzw-bdm p=" << fmt(lb->p_value)
             << "; ai-bdm p=" << fmt(ab->p_value);
    o.require(la->p_value > 0.05, "lzw vs ai p > 0.05");
    o.require(lb->p_value < 0.01, "lzw vs bdm p < 0.01");
    o.require(ab->p_value < 0.01, "ai vs bdm p < 0.01");

    o.detail << "; best fits:";
    for (const auto& m : r.fits) {
        if (m.fits.empty()) {
            o.detail << " " << m.measure << "=none";
            continue;
        }
        const Family best = m.fits.front().family;
        o.detail << " " << m.measure << "=" << to_string(best);
        if (m.measure == "bdm")
            o.require(best == Family::Pareto, "bdm best fit is pareto");
        else if (m.measure == "lzw" || m.measure == "ai" || m.measure == "entropy")
            o.require(best != Family::Pareto, m.measure + " best fit is short-tailed");
    }
}

void c6(Outcome& o)
{
    const auto& table = table22();
    HierarchyOptions opts;
    opts.table = &table;
    std::size_t strings = 0, failed = 0, identity = 0, identity_failed = 0;
    auto visit = [&](const std::string& text) {
        const auto rep = verify_hierarchy(Sequence::from_text(text, "01"), opts);
        ++strings;
        failed += !rep.all_pass();
    };
    Rng rng(0xB0D5);
    for (int t = 0; t < 1000; ++t) {
        std::string s(64, '0');
        for (auto& c : s)
            c = static_cast<char>('0' + rng.below(2));
        visit(s);
    }
    for (char c : {'0', '1'})
        for (int k = 0; k <= 8; ++k)
            visit(std::string(std::size_t{1} << k, c));
    for (const auto& [out, count] : table.counts()) {
        (void)count;
        const auto rep = verify_hierarchy(Sequence::from_text(out, "01"), opts);
        for (const auto& c : rep.checks)
            if (c.name == "ctm_identity") {
                ++identity;
                identity_failed += c.status != CheckStatus::Pass;
            }
    }
    o.detail << " C=(" << kFrozenBounds.entropy_vs_block_entropy << ", " << kFrozenBounds.entropy_vs_kai << ", "
             << kFrozenBounds.ctm_vs_kai << ") strings=" << strings << " failed=" << failed
             << " identity checked=" << identity << " failed=" << identity_failed;
    o.require(failed == 0, "every bound holds");
    o.require(identity == table.counts().size() && identity_failed == 0, "identity on every covered string");
}

void c7(Outcome& o)
{
    const auto t0 = Clock::now();
    std::ostringstream a, b;
    ctm_build({2, 2, 500}).write(a);
    const double first = std::chrono::duration<double>(Clock::now() - t0).count();
    CtmBuildOptions single;
    single.threads = 1;
    const auto t = ctm_build({2, 2, 500}, single);
    t.write(b);
    const double k0 = t.k_ctm("0"), k010 = t.k_ctm("010");
    o.detail << " identical=" << (a.str() == b.str() ? "yes" : "no") << " bytes=" << a.str().size()
             << " k(0)=" << fmt(k0) << " k(010)=" << fmt(k010) << " build=" << fmt(first, 3) << " s";
    o.require(a.str() == b.str(), "builds byte-identical");
    o.require(k0 < k010, "k(0) < k(010)");
    o.require(first < 300.0, "build under 5 min");
}

void c8(Outcome& o)
{
    MolecularConfig mc;
    mc.csv_path = CXLAB_TEST_DATA "/molecular_fixture.csv";
    mc.columns = ColumnMap::parse("id=Compound,inchi=InChI,ma=MA,ms2=MS2 peaks,group=Class");
    mc.permutations = 2000;
    mc.seed = 1;
    const auto r = run_molecular(mc);

    const auto dir = std::filesystem::temp_directory_path() / "cxlab_acceptance_molecular";
    std::filesystem::remove_all(dir);
    write_report(dir.string(), r, RunInfo{true, 0.0});
    const auto json = Json::parse(std::ifstream(dir / "report.json"));
    for (const char* key : {"ingest", "ms2_relation", "ma_vs_payload_length", "thresholds", "group_separation", "knn"})
        o.require(json.contains(key) && !json.at(key).is_null(), std::string("section ") + key);
    o.require(r.skipped.empty(), "no skipped sections");
    o.require(!r.ms2.empty() && !r.thresholds.empty() && !r.separation.empty() && !r.knn.empty(),
              "all sections populated");

    std::map<std::string, const MoleculeRecord*> by_id;
    for (const auto& rec : r.ingest.records)
        by_id[rec.id] = &rec;
    double worst = 0.0;
    std::size_t fits = 0;
    for (const auto& rel : r.ms2) {
        V xs, ys;
        for (const auto& id : rel.ids) {
            xs.push_back(*by_id.at(id)->ms2_peaks);
            ys.push_back(*measure_value(*by_id.at(id), rel.measure));
        }
        for (const auto& q : rel.quantiles) {
            const double grid = oracle::grid_min_pinball(xs, ys, q.tau);
            const double loss = pinball_loss(xs, ys, q.tau, q.line.intercept, q.line.slope);
            worst = std::max(worst, std::abs(loss - grid));
            ++fits;
        }
    }
    o.detail << " records=" << r.ingest.records.size() << " sections=" << json.size() << " quantile fits=" << fits
             << " max |loss - grid oracle|=" << fmt(worst, 3);
    o.require(fits > 0, "quantile fits present");
    o.require(worst <= 1e-9, "quantile regression matches grid oracle within 1e-9");

    const char* real = std::getenv("CXLAB_REAL_CSV");
    const char* cols = std::getenv("CXLAB_REAL_COLUMNS");
    if (!real || !cols) {
        o.detail << "; real-data conditions not evaluated (CXLAB_REAL_CSV unset)";
        return;
    }
    MolecularConfig rc;
    rc.csv_path = real;
    rc.columns = ColumnMap::parse(cols);
    rc.permutations = 1000;
    const auto rr = run_molecular(rc);
    o.require(rr.ma_length_pearson && *rr.ma_length_pearson >= 0.90, "MA vs payload length r >= 0.90");
    o.require(rr.ma_vs_length && rr.ma_vs_length->r_squared >= 0.85, "MA vs payload length R^2 >= 0.85");
    std::optional<double> ms2_thr;
    for (const auto& t : rr.thresholds)
        if (t.measure == "ma")
            ms2_thr = t.ms2_threshold;
    o.require(ms2_thr && *ms2_thr >= 20.0 && *ms2_thr <= 30.0, "MS2 threshold in [20, 30]");
    o.detail << "; real data r=" << (rr.ma_length_pearson ? fmt(*rr.ma_length_pearson) : "na")
             << " ms2 threshold=" << (ms2_thr ? fmt(*ms2_thr) : "na");
}

void c9(Outcome& o)
{
    std::ifstream in(CXLAB_TEST_DATA "/stats_reference.json");
    const auto doc = nlohmann::json::parse(in);
    double worst = 0.0;
    std::size_t n = 0;
    auto cmp = [&](double got, const nlohmann::json& e, const char* key) {
        worst = std::max(worst, std::abs(got - e.at(key).get<double>()));
    };
    for (const auto& f : doc.at("fixtures")) {
        const auto kind = f.at("kind").get<std::string>();
        const auto& e = f.at("expected");
        if (kind == "pearson") {
            cmp(pearson(f.at("x").get<V>(), f.at("y").get<V>()), e, "r");
        } else if (kind == "spearman") {
            cmp(spearman(f.at("x").get<V>(), f.at("y").get<V>()), e, "rho");
        } else if (kind == "ols") {
            const auto fit = ols(f.at("x").get<V>(), f.at("y").get<V>());
            cmp(fit.intercept, e, "intercept");
            cmp(fit.slope, e, "slope");
            cmp(fit.r_squared, e, "r_squared");
        } else if (kind == "welch") {
            const auto t = welch_t(f.at("a").get<V>(), f.at("b").get<V>());
            cmp(t.t, e, "t");
            cmp(t.df, e, "df");
            cmp(t.p_value, e, "p_value");
        } else if (kind == "kruskal") {
            const auto k = kruskal_wallis(f.at("groups").get<std::vector<V>>());
            cmp(k.h, e, "h");
            cmp(k.p_value, e, "p_value");
        } else {
            throw std::runtime_error("unknown fixture kind " + kind);
        }
        ++n;
    }
    o.detail << " fixtures=" << n << " max abs error=" << fmt(worst, 3);
    o.require(n == 20, "20 fixtures");
    o.require(worst < 1e-6, "references within 1e-6");

    Rng rng(0xC0CC);
    V base, loc, scale;
    for (int i = 0; i < 60; ++i) {
        base.push_back(rng.normal());
        loc.push_back(rng.normal() + 1.0);
        scale.push_back(3.0 * rng.normal());
    }
    const double p_loc = cucconi(base, loc, 10'000, 1).p_value;
    const double p_scale = cucconi(base, scale, 10'000, 2).p_value;
    const double p_same = cucconi(base, base, 10'000, 3).p_value;
    o.detail << "; cucconi p(location)=" << fmt(p_loc) << " p(scale)=" << fmt(p_scale)
             << " p(identical)=" << fmt(p_same);
    o.require(p_loc < 0.05, "cucconi rejects a location shift");
    o.require(p_scale < 0.05, "cucconi rejects a scale shift");
    o.require(p_same >= 0.05, "cucconi keeps identical samples");
}

}

int main()
{
    criterion(1, "golden values", 1.0, c1);
    criterion(2, "heuristic soundness", 600.0, c2);
    criterion(3, "convergence tables", 1800.0, c3);
    criterion(4, "log-ratio asymptotics", 1800.0, c4);
    criterion(5, "zbc fixed-length suite", 600.0, c5);
    criterion(6, "bound suites", 600.0, c6);
    criterion(7, "ctm determinism", 300.0, c7);
    criterion(8, "molecular pipeline", 60.0, c8);
    criterion(9, "statistics oracles", 300.0, c9);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
