#include "cxlab/bdm.hpp"

#include "cxlab/assembly.hpp"
#include "cxlab/entropy.hpp"
#include "cxlab/error.hpp"
#include "cxlab/lz.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cxlab {

std::string_view to_string(BdmEstimator e) noexcept
{
    switch (e) {
    case BdmEstimator::Ctm: return "ctm";
    case BdmEstimator::LzwBits: return "lzw_bits";
    case BdmEstimator::EntropyBits: return "entropy_bits";
    }
    return "?";
}

BdmEstimator parse_estimator(std::string_view name)
{
    if (name == "ctm")
        return BdmEstimator::Ctm;
    if (name == "lzw_bits" || name == "lzw-bits")
        return BdmEstimator::LzwBits;
    if (name == "entropy_bits" || name == "entropy-bits")
        return BdmEstimator::EntropyBits;
    throw ValidationError("unknown BDM estimator '" + std::string(name) + "'");
}

BdmPartition partition(std::span<const Symbol> x, std::size_t block_size)
{
    BdmPartition p;
    const std::size_t n = x.size();
    p.block_size = block_size == 0 ? n : block_size;
    if (n == 0)
        return p;
    std::map<std::vector<Symbol>, std::size_t> index;
    for (std::size_t i = 0; i < n; i += p.block_size) {
        std::vector<Symbol> block(x.begin() + i, x.begin() + std::min(n, i + p.block_size));
        auto [it, fresh] = index.emplace(block, p.blocks.size());
        if (fresh)
            p.blocks.emplace_back(std::move(block), 0);
        ++p.blocks[it->second].second;
        ++p.block_count;
    }
    return p;
}

std::string ctm_key(std::span<const Symbol> block)
{
    std::string key(block.size(), '0');
    for (std::size_t i = 0; i < block.size(); ++i) {
        if (block[i] > 9)
            throw ValidationError("fallback required: symbol " + std::to_string(block[i]) +
                                  " has no table digit");
        key[i] = static_cast<char>('0' + block[i]);
    }
    return key;
}

namespace {

std::size_t effective_block(const BdmOptions& o, std::size_t n)
{
    if (o.single_block)
        return 0;
    if (o.block_size != 0)
        return o.block_size;
    if (o.estimator == BdmEstimator::Ctm && o.table)
        return std::max<std::size_t>(1, o.table->complete_length());
    return std::min(kDefaultBdmBlock, std::max<std::size_t>(n, 1));
}

BdmResult evaluate(std::span<const Symbol> x, const BdmOptions& o)
{
    if (x.empty())
        throw ValidationError("empty sequence");
    if (o.estimator == BdmEstimator::Ctm && !o.table)
        throw ValidationError("ctm estimator needs a table");

    BdmResult r;
    r.partition = partition(x, effective_block(o, x.size()));
    const double total = static_cast<double>(r.partition.block_count);
    for (const auto& [block, count] : r.partition.blocks) {
        double k = 0.0;
        switch (o.estimator) {
        case BdmEstimator::EntropyBits:
            k = std::log2(total / static_cast<double>(count));
            break;
        case BdmEstimator::LzwBits:
            k = static_cast<double>(lzw_metrics(block).compressed_bits);
            break;
        case BdmEstimator::Ctm: {
            bool covered = std::all_of(block.begin(), block.end(),
                                       [&](Symbol s) { return s < o.table->space().symbols; });
            if (covered) {
                const std::uint64_t c = o.table->count(ctm_key(block));
                covered = c > 0;
                if (covered)
                    k = std::log2(static_cast<double>(o.table->total_halting()) / static_cast<double>(c));
            }
            if (!covered) {
                if (!o.fallback)
                    throw ValidationError("fallback required: block of length " +
                                          std::to_string(block.size()) + " not in ctm table");
                k = o.table->max_k() + 1.0;
                ++r.fallback_blocks;
            }
            break;
        }
        }
        r.bits += std::log2(static_cast<double>(count)) + k;
    }
    return r;
}

std::string_view status_reason(bool ok) { return ok ? "" : "inequality violated"; }

} // namespace

BdmResult bdm(const Sequence& x, const BdmOptions& options) { return evaluate(x.symbols(), options); }

double bdm_bits(std::span<const Symbol> x, const BdmOptions& options) { return evaluate(x, options).bits; }

bool HierarchyReport::all_pass() const noexcept
{
    return std::none_of(checks.begin(), checks.end(),
                        [](const InequalityCheck& c) { return c.status == CheckStatus::Fail; });
}

HierarchyReport verify_hierarchy(const Sequence& x, const HierarchyOptions& options)
{
    if (x.empty())
        throw ValidationError("empty sequence");
    HierarchyReport rep;
    rep.length = x.size();
    const auto symbols = x.symbols();

    AssemblyResult assembly;
    if (options.exact_ai && x.size() <= ExactOptions{}.max_length) {
        assembly = ai_exact(x);
        rep.ai_exact = true;
    } else {
        assembly = ai_heuristic(x);
    }
    rep.ai = assembly.ai;
    rep.k_ai_bits = assembly.k_ai_bits;
    rep.lzw_bits = lzw_metrics(symbols).compressed_bits;

    const std::size_t eb = std::min(options.entropy_block, x.size());
    BdmOptions entropy_opts;
    entropy_opts.estimator = BdmEstimator::EntropyBits;
    entropy_opts.block_size = eb;
    const BdmResult be = bdm(x, entropy_opts);
    rep.bdm_entropy = be.bits;
    rep.block_entropy_total = static_cast<double>(be.partition.block_count) * block_entropy(symbols, eb);

    auto check = [&](std::string name, double lhs, double rhs, double c) {
        const bool ok = lhs <= rhs + c;
        rep.checks.push_back({std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, lhs, rhs, c,
                              std::string(status_reason(ok))});
    };
    auto skip = [&](std::string name, std::string reason) {
        rep.checks.push_back({std::move(name), CheckStatus::Skipped, 0.0, 0.0, 0.0, std::move(reason)});
    };

    const CtmTable* table = options.table;
    const bool binary_range = std::all_of(symbols.begin(), symbols.end(), [&](Symbol s) {
        return table && s < table->space().symbols;
    });

    if (!table) {
        skip("ctm_identity", "no ctm table");
    } else if (!binary_range || !table->covers(ctm_key(symbols))) {
        skip("ctm_identity", "x not covered by the ctm table");
    } else {
        rep.k_ctm = table->k_ctm(ctm_key(symbols));
        BdmOptions single;
        single.estimator = BdmEstimator::Ctm;
        single.table = table;
        single.single_block = true;
        const double at_i0 = bdm(x, single).bits;
        const bool ok = at_i0 == *rep.k_ctm;
        rep.checks.push_back({"ctm_identity", ok ? CheckStatus::Pass : CheckStatus::Fail, at_i0, *rep.k_ctm,
                              0.0, ok ? "" : "BDM at the single-block partition differs from k_ctm"});
    }

    check("bdm_entropy_le_block_entropy", rep.bdm_entropy, rep.block_entropy_total,
          options.constants.entropy_vs_block_entropy);
    check("bdm_entropy_le_kai", rep.bdm_entropy, static_cast<double>(rep.k_ai_bits),
          options.constants.entropy_vs_kai);

    if (!table) {
        skip("bdm_ctm_le_kai", "no ctm table");
    } else if (!binary_range) {
        skip("bdm_ctm_le_kai", "symbols outside the table alphabet");
    } else {
        BdmOptions ctm_opts;
        ctm_opts.estimator = BdmEstimator::Ctm;
        ctm_opts.table = table;
        ctm_opts.block_size = options.ctm_block;
        ctm_opts.fallback = true;
        rep.bdm_ctm = bdm(x, ctm_opts).bits;
        check("bdm_ctm_le_kai", *rep.bdm_ctm, static_cast<double>(rep.k_ai_bits),
              options.constants.ctm_vs_kai);
    }
    return rep;
}

} // namespace cxlab
