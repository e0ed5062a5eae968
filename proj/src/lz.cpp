#include "cxlab/lz.hpp"

#include "cxlab/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <unordered_map>

namespace cxlab {

unsigned codeword_width(std::size_t entries) noexcept
{
    if (entries <= 2)
        return 1;
    return static_cast<unsigned>(std::bit_width(entries - 1));
}

namespace {

/// Symbols present in x, in first-occurrence order, and x rewritten over
/// their ranks.
struct Ranked {
    std::vector<Symbol> present;
    std::vector<std::uint16_t> ranks;
};

Ranked rank_symbols(std::span<const Symbol> x)
{
    std::array<int, kMaxAlphabet> rank{};
    rank.fill(-1);
    Ranked out;
    out.ranks.reserve(x.size());
    for (Symbol s : x) {
        if (rank[s] < 0) {
            rank[s] = static_cast<int>(out.present.size());
            out.present.push_back(s);
        }
        out.ranks.push_back(static_cast<std::uint16_t>(rank[s]));
    }
    return out;
}

template <bool Materialize>
ParseMetrics lzw_run(std::span<const Symbol> x, ParseResult* result)
{
    ParseMetrics m;
    if (x.empty())
        return m;
    const Ranked r = rank_symbols(x);
    const std::size_t k = r.present.size();

    // Trie over ranks; node i is dictionary entry i. Seeds are nodes 0..k-1.
    std::vector<std::int32_t> child;
    child.reserve((x.size() + k + 1) * k);
    child.assign((k + 1) * k, -1);
    std::size_t nodes = k;
    std::vector<std::int32_t> parent;
    std::vector<std::uint16_t> last;
    if constexpr (Materialize) {
        parent.assign(k, -1);
        for (std::size_t i = 0; i < k; ++i)
            last.push_back(static_cast<std::uint16_t>(i));
    }

    auto emit = [&](std::int32_t node) {
        m.compressed_bits += codeword_width(nodes);
        ++m.c2;
        if constexpr (Materialize)
            result->codewords.push_back(static_cast<std::size_t>(node));
    };

    std::int32_t cur = r.ranks[0];
    for (std::size_t i = 1; i < r.ranks.size(); ++i) {
        const std::uint16_t c = r.ranks[i];
        const std::int32_t next = child[static_cast<std::size_t>(cur) * k + c];
        if (next >= 0) {
            cur = next;
            continue;
        }
        emit(cur);
        child[static_cast<std::size_t>(cur) * k + c] = static_cast<std::int32_t>(nodes);
        ++nodes;
        child.resize((nodes + 1) * k, -1);
        if constexpr (Materialize) {
            parent.push_back(cur);
            last.push_back(c);
        }
        cur = c;
    }
    emit(cur);
    m.c1 = nodes;

    if constexpr (Materialize) {
        result->dictionary.resize(nodes);
        for (std::size_t id = 0; id < nodes; ++id) {
            auto& phrase = result->dictionary[id];
            phrase.id = id;
            for (std::int32_t n = static_cast<std::int32_t>(id); n >= 0; n = parent[static_cast<std::size_t>(n)])
                phrase.symbols.push_back(r.present[last[static_cast<std::size_t>(n)]]);
            std::reverse(phrase.symbols.begin(), phrase.symbols.end());
        }
        result->compressed_bits = m.compressed_bits;
    }
    return m;
}

std::vector<std::size_t> z_function(std::span<const Symbol> x)
{
    const std::size_t n = x.size();
    std::vector<std::size_t> z(n, 0);
    if (n == 0)
        return z;
    z[0] = n;
    std::size_t l = 0, r = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (i < r)
            z[i] = std::min(r - i, z[i - l]);
        while (i + z[i] < n && x[z[i]] == x[i + z[i]])
            ++z[i];
        if (i + z[i] > r) {
            l = i;
            r = i + z[i];
        }
    }
    return z;
}

} // namespace

std::vector<std::size_t> lz_prefix_factor_lengths(std::span<const Symbol> x)
{
    std::vector<std::size_t> lengths;
    const auto z = z_function(x);
    std::vector<std::size_t> boundaries; // increasing prefix lengths at factor ends
    std::size_t p = 0;
    while (p < x.size()) {
        std::size_t len = 1;
        if (p > 0) {
            auto it = std::upper_bound(boundaries.begin(), boundaries.end(), z[p]);
            if (it != boundaries.begin())
                len = std::max<std::size_t>(1, *std::prev(it));
        }
        lengths.push_back(len);
        p += len;
        boundaries.push_back(p);
    }
    return lengths;
}

ParseMetrics lz_prefix_metrics(std::span<const Symbol> x)
{
    ParseMetrics m;
    if (x.empty())
        return m;
    std::array<bool, kMaxAlphabet> seen{};
    std::size_t seeds = 0;
    for (Symbol s : x)
        if (!seen[s]) {
            seen[s] = true;
            ++seeds;
        }
    std::size_t entries = seeds;
    std::size_t p = 0;
    for (std::size_t len : lz_prefix_factor_lengths(x)) {
        m.compressed_bits += codeword_width(entries);
        ++m.c2;
        p += len;
        if (p >= 2)
            ++entries;
    }
    m.c1 = entries;
    return m;
}

ParseResult lzw_encode(const Sequence& x)
{
    if (x.empty())
        throw ValidationError("empty sequence");
    ParseResult result;
    result.kind = ParseKind::Lzw;
    result.alphabet_size = x.alphabet_size();
    result.labels = x.labels();
    lzw_run<true>(x.symbols(), &result);
    return result;
}

ParseMetrics lzw_metrics(std::span<const Symbol> x)
{
    return lzw_run<false>(x, nullptr);
}

ParseResult lz_prefix_parse(const Sequence& x)
{
    if (x.empty())
        throw ValidationError("empty sequence");
    ParseResult result;
    result.kind = ParseKind::LzPrefix;
    result.alphabet_size = x.alphabet_size();
    result.labels = x.labels();

    const auto sym = x.symbols();
    std::array<std::ptrdiff_t, kMaxAlphabet> seed_id{};
    seed_id.fill(-1);
    for (Symbol s : sym)
        if (seed_id[s] < 0) {
            seed_id[s] = static_cast<std::ptrdiff_t>(result.dictionary.size());
            result.dictionary.push_back({result.dictionary.size(), {s}});
        }

    // Boundary prefix length -> dictionary id.
    std::unordered_map<std::size_t, std::size_t> prefix_id;
    std::size_t p = 0;
    for (std::size_t len : lz_prefix_factor_lengths(sym)) {
        std::size_t id = len == 1 ? static_cast<std::size_t>(seed_id[sym[p]]) : prefix_id.at(len);
        result.compressed_bits += codeword_width(result.dictionary.size());
        result.codewords.push_back(id);
        p += len;
        if (p >= 2) {
            prefix_id[p] = result.dictionary.size();
            result.dictionary.push_back({result.dictionary.size(), std::vector<Symbol>(sym.begin(), sym.begin() + static_cast<std::ptrdiff_t>(p))});
        } else {
            prefix_id[p] = static_cast<std::size_t>(seed_id[sym[0]]);
        }
    }
    return result;
}

Sequence decode(const ParseResult& p)
{
    std::unordered_map<std::size_t, const Phrase*> by_id;
    for (const auto& phrase : p.dictionary)
        by_id.emplace(phrase.id, &phrase);
    std::vector<Symbol> out;
    for (std::size_t id : p.codewords) {
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw CorruptParse("corrupt parse: codeword " + std::to_string(id) + " not in dictionary");
        for (Symbol s : it->second->symbols) {
            if (s >= p.alphabet_size)
                throw CorruptParse("corrupt parse: phrase symbol outside alphabet");
            out.push_back(s);
        }
    }
    if (out.empty())
        throw CorruptParse("corrupt parse: no codewords");
    return Sequence(std::move(out), p.alphabet_size, p.labels);
}

} // namespace cxlab
