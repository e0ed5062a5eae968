#include "cxlab/assembly.hpp"
#include "cxlab/bdm.hpp"
#include "cxlab/ctm.hpp"
#include "cxlab/entropy.hpp"
#include "cxlab/error.hpp"
#include "cxlab/experiments.hpp"
#include "cxlab/lz.hpp"
#include "cxlab/report.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>

using namespace cxlab;

namespace {

struct MeasureArgs {
    std::string text;
    std::string file;
    std::vector<std::string> measures{"ai", "lzw", "entropy", "bdm"};
    std::string ctm_table;
    bool json = false;
    std::size_t window = kDefaultEntropyWindow;
    std::uint64_t node_budget = ExactOptions{}.node_budget;
};

std::string read_input(const MeasureArgs& a)
{
    if (a.file.empty())
        return a.text;
    std::ifstream in(a.file, std::ios::binary);
    if (!in)
        throw ValidationError("cannot read " + a.file);
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (!s.empty() && s.back() == '\n')
        s.pop_back();
    if (!s.empty() && s.back() == '\r')
        s.pop_back();
    return s;
}

int run_measure(const MeasureArgs& a)
{
    static const std::set<std::string> known{"ai", "ai-exact", "lzw", "entropy", "bdm"};
    for (const auto& m : a.measures)
        if (!known.count(m))
            throw ValidationError("unknown measure '" + m + "' (ai, ai-exact, lzw, entropy, bdm)");
    const std::string text = read_input(a);
    if (text.empty())
        throw ValidationError("empty sequence");

    std::optional<CtmTable> table;
    if (!a.ctm_table.empty())
        table = CtmTable::load(a.ctm_table);

    const Sequence x = Sequence::from_text(text);
    Json out{{"input", text}, {"length", x.size()}, {"alphabet_size", x.alphabet_size()}};
    std::vector<std::pair<std::string, std::string>> lines;

    for (const auto& m : a.measures) {
        if (m == "ai") {
            const auto r = ai_heuristic(x);
            out["ai"] = to_json(r);
            lines.emplace_back("ai", std::to_string(r.ai) + " (" + std::string(to_string(r.method)) + ", " +
                                         std::to_string(r.k_ai_bits) + " bits)");
        } else if (m == "ai-exact") {
            ExactOptions opts;
            opts.node_budget = a.node_budget;
            const auto r = ai_exact(x, opts);
            out["ai_exact"] = to_json(r);
            lines.emplace_back("ai-exact", std::to_string(r.ai) + " (" + std::to_string(r.k_ai_bits) + " bits)");
        } else if (m == "lzw") {
            const auto p = lzw_encode(x);
            out["lzw"] = to_json(p);
            lines.emplace_back("lzw", std::to_string(p.c2()) + " codewords, " + std::to_string(p.c1()) +
                                          " dictionary entries, " + std::to_string(p.compressed_bits) + " bits");
        } else if (m == "entropy") {
            const auto e = shannon_entropy(x, 1);
            const auto rate = entropy_rate(x, a.window);
            Json ej = to_json(e);
            ej["entropy_rate"] = rate.rate;
            ej["entropy_rate_block"] = rate.block_size;
            ej["window"] = a.window;
            out["entropy"] = std::move(ej);
            std::ostringstream s;
            s << e.h_symbol << " bits/symbol, rate " << rate.rate << " (b=" << rate.block_size << ")";
            lines.emplace_back("entropy", s.str());
        } else if (m == "bdm") {
            BdmOptions o;
            Sequence target = x;
            bool digits = table && std::all_of(text.begin(), text.end(), [&](char c) {
                return c >= '0' && c < static_cast<char>('0' + table->space().symbols);
            });
            if (digits) {
                std::string alphabet;
                for (unsigned s = 0; s < table->space().symbols; ++s)
                    alphabet += static_cast<char>('0' + s);
                target = Sequence::from_text(text, alphabet);
                o.estimator = BdmEstimator::Ctm;
                o.table = &*table;
                o.fallback = true;
            } else {
                o.estimator = BdmEstimator::LzwBits;
            }
            const auto r = bdm(target, o);
            out["bdm"] = {{"bits", r.bits},
                          {"estimator", std::string(to_string(o.estimator))},
                          {"block_size", r.partition.block_size},
                          {"blocks", r.partition.block_count},
                          {"distinct_blocks", r.partition.blocks.size()},
                          {"fallback_blocks", r.fallback_blocks}};
            std::ostringstream s;
            s << r.bits << " bits (" << to_string(o.estimator) << ", block " << r.partition.block_size << ")";
            lines.emplace_back("bdm", s.str());
        }
    }
    if (a.json) {
        std::cout << out.dump(2) << '\n';
    } else {
        for (const auto& [k, v] : lines)
            std::cout << k << '\t' << v << '\n';
    }
    return 0;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Assembly index, LZ coders, entropy and CTM/BDM measures with experiment runners"};
    app.require_subcommand(1);

    MeasureArgs ma;
    auto* measure = app.add_subcommand("measure", "Measures of one string");
    auto* text_opt = measure->add_option("--text", ma.text, "Input string");
    auto* file_opt = measure->add_option("--file", ma.file, "Read the input from a file (one trailing newline dropped)");
    text_opt->excludes(file_opt);
    measure->add_option("--measures", ma.measures, "Comma list of ai, ai-exact, lzw, entropy, bdm")->delimiter(',');
    measure->add_option("--ctm-table", ma.ctm_table, "CTM table for bdm on digit strings");
    measure->add_flag("--json", ma.json, "JSON output");
    measure->add_option("--window", ma.window, "Entropy-rate window cap")->check(CLI::PositiveNumber);
    measure->add_option("--node-budget", ma.node_budget, "Exact solver node budget");

    MachineSpace space;
    std::string ctm_out;
    auto* ctm = app.add_subcommand("ctm", "Coding theorem method tables");
    ctm->require_subcommand(1);
    auto* build = ctm->add_subcommand("build", "Enumerate a machine space and write its output table");
    build->add_option("--states", space.states, "States")->required();
    build->add_option("--symbols", space.symbols, "Symbols")->required();
    build->add_option("--cutoff", space.cutoff, "Step cutoff")->required();
    build->add_option("--out", ctm_out, "Output TSV path")->required();

    auto* experiment = app.add_subcommand("experiment", "Experiment runners");
    experiment->require_subcommand(1);
    ZbcConfig zc;
    std::string zbc_out;
    bool stable = false;
    std::string zbc_estimator = "lzw_bits";
    auto* zbc = experiment->add_subcommand("zbc", "Fixed-length ZBC samples");
    zbc->add_option("--length", zc.length, "Sample length")->required();
    zbc->add_option("--trials", zc.trials, "Trials")->required();
    zbc->add_option("--seed", zc.seed, "Seed")->required();
    zbc->add_option("--out", zbc_out, "Output directory")->required();
    zbc->add_flag("--exact-shuffle", zc.exact_shuffle, "Shuffle the ZBC string instead of sampling with replacement");
    zbc->add_option("--bdm-estimator", zbc_estimator, "lzw_bits or entropy_bits");
    zbc->add_option("--bdm-block", zc.bdm_block, "BDM block size")->check(CLI::PositiveNumber);
    zbc->add_flag("--stable", stable, "Omit timestamps and timings");

    GrowingConfig gc;
    std::string growing_out, kind = "random";
    auto* growing = experiment->add_subcommand("growing", "Growing sequences");
    growing->add_option("--kind", kind, "random, pattern5, pattern10 or zbc")->required();
    growing->add_option("--max-length", gc.max_length, "Longest prefix")->required();
    growing->add_option("--trials", gc.trials, "Trials")->required();
    growing->add_option("--seed", gc.seed, "Seed")->required();
    growing->add_option("--out", growing_out, "Output directory")->required();
    growing->add_flag("--stable", stable, "Omit timestamps and timings");

    MolecularConfig mc;
    std::string columns, mol_out;
    auto* molecular = app.add_subcommand("molecular", "Molecular dataset pipeline");
    molecular->add_option("--csv", mc.csv_path, "Input CSV")->required();
    molecular->add_option("--columns", columns, "id=...,inchi=...,ma=...,ms2=...,group=...")->required();
    molecular->add_option("--quantiles", mc.quantiles, "Quantile levels")->delimiter(',');
    molecular->add_option("--ma-threshold", mc.ma_threshold, "MA threshold for the living rule");
    molecular->add_option("--length-threshold", mc.length_threshold, "InChI payload length threshold");
    molecular->add_option("--permutations", mc.permutations, "Cucconi permutations");
    molecular->add_option("--seed", mc.seed, "Seed for permutation tests");
    molecular->add_option("--knn-k", mc.knn_k, "Neighbours for KNN")->check(CLI::PositiveNumber);
    molecular->add_option("--out", mol_out, "Output directory")->required();
    molecular->add_flag("--stable", stable, "Omit timestamps and timings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const auto t0 = std::chrono::steady_clock::now();
        if (measure->parsed()) {
            if (ma.text.empty() && ma.file.empty())
                throw ValidationError("measure needs --text or --file");
            return run_measure(ma);
        }
        if (build->parsed()) {
            const CtmTable table = ctm_build(space);
            table.save(ctm_out);
            std::cout << "machines " << machine_count(space).value_or(0) << ", halting " << table.total_halting()
                      << ", outputs " << table.counts().size() << " -> " << ctm_out << '\n';
            return 0;
        }
        if (zbc->parsed()) {
            zc.bdm_estimator = parse_estimator(zbc_estimator);
            const auto r = run_zbc_permutations(zc);
            write_report(zbc_out, r, {stable, seconds_since(t0)});
            std::cout << "zbc report -> " << zbc_out << '\n';
            return 0;
        }
        if (growing->parsed()) {
            gc.kind = parse_growing_kind(kind);
            const auto r = run_growing(gc);
            write_report(growing_out, r, {stable, seconds_since(t0)});
            std::cout << "growing report -> " << growing_out << '\n';
            return 0;
        }
        if (molecular->parsed()) {
            mc.columns = ColumnMap::parse(columns);
            for (double q : mc.quantiles)
                if (!(q > 0.0 && q < 1.0))
                    throw ValidationError("quantiles must lie in (0, 1)");
            const auto r = run_molecular(mc);
            write_report(mol_out, r, {stable, seconds_since(t0)});
            std::cout << "molecular report -> " << mol_out << " (" << r.ingest.records.size() << " records, "
                      << r.ingest.skipped << " skipped)\n";
            return 0;
        }
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
