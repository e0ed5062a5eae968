#include "cxlab/entropy.hpp"

#include "cxlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cxlab {

namespace {

using BlockCounts = std::map<std::vector<Symbol>, std::size_t>;

BlockCounts count_blocks(std::span<const Symbol> x, std::size_t b, BlockMode mode)
{
    BlockCounts counts;
    const std::size_t n = x.size();
    if (mode == BlockMode::Sliding) {
        for (std::size_t i = 0; i + b <= n; ++i)
            ++counts[std::vector<Symbol>(x.begin() + i, x.begin() + i + b)];
    } else {
        for (std::size_t i = 0; i < n; i += b) {
            const std::size_t len = std::min(b, n - i);
            ++counts[std::vector<Symbol>(x.begin() + i, x.begin() + i + len)];
        }
    }
    return counts;
}

void check_block(std::size_t n, std::size_t b)
{
    if (b == 0 || b > n)
        throw ValidationError("block size " + std::to_string(b) + " outside 1.." + std::to_string(n));
}

// Byte-alphabet fast path: counts of b-blocks packed into integers.
double packed_entropy(std::span<const Symbol> x, std::size_t b, BlockMode mode)
{
    std::vector<std::uint64_t> keys;
    const std::size_t n = x.size();
    auto pack = [&](std::size_t i, std::size_t len) {
        std::uint64_t k = len;
        for (std::size_t j = 0; j < len; ++j)
            k = (k << 8) | x[i + j];
        return k;
    };
    if (mode == BlockMode::Sliding) {
        for (std::size_t i = 0; i + b <= n; ++i)
            keys.push_back(pack(i, b));
    } else {
        for (std::size_t i = 0; i < n; i += b)
            keys.push_back(pack(i, std::min(b, n - i)));
    }
    std::sort(keys.begin(), keys.end());
    std::vector<std::size_t> counts;
    for (std::size_t i = 0; i < keys.size();) {
        std::size_t j = i;
        while (j < keys.size() && keys[j] == keys[i])
            ++j;
        counts.push_back(j - i);
        i = j;
    }
    return entropy_of_counts(counts);
}

} // namespace

double entropy_of_counts(std::span<const std::size_t> counts)
{
    double total = 0.0;
    for (auto c : counts)
        total += static_cast<double>(c);
    if (total <= 0.0)
        return 0.0;
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0)
            continue;
        const double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    return h == 0.0 ? 0.0 : h;
}

double block_entropy(std::span<const Symbol> x, std::size_t b, BlockMode mode)
{
    check_block(x.size(), b);
    if (b <= 7)
        return packed_entropy(x, b, mode);
    std::vector<std::size_t> counts;
    for (const auto& [block, c] : count_blocks(x, b, mode))
        counts.push_back(c);
    return entropy_of_counts(counts);
}

EntropyReport shannon_entropy(const Sequence& x, std::size_t b, BlockMode mode)
{
    check_block(x.size(), b);
    EntropyReport r;
    r.block_size = b;
    r.mode = mode;
    r.h_symbol = block_entropy(x.symbols(), 1, mode);

    const BlockCounts counts = count_blocks(x.symbols(), b, mode);
    std::vector<std::size_t> raw;
    for (const auto& [block, c] : counts) {
        r.block_count += c;
        raw.push_back(c);
    }
    for (const auto& [block, c] : counts)
        r.probabilities[block] = static_cast<double>(c) / static_cast<double>(r.block_count);
    r.h_block = entropy_of_counts(raw);
    return r;
}

EntropyRate entropy_rate(std::span<const Symbol> x, std::size_t w, BlockMode mode)
{
    if (w == 0)
        throw ValidationError("entropy window must be at least 1");
    if (x.empty())
        throw ValidationError("empty sequence");
    EntropyRate best{block_entropy(x, 1, mode), 1};
    const std::size_t top = std::min(w, x.size());
    for (std::size_t b = 2; b <= top; ++b) {
        const double rate = block_entropy(x, b, mode) / static_cast<double>(b);
        if (rate < best.rate) {
            best.rate = rate;
            best.block_size = b;
        }
    }
    return best;
}

} // namespace cxlab
