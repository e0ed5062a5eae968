#pragma once

#include "cxlab/sequence.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <vector>

namespace cxlab {

enum class BlockMode {
    /// Consecutive blocks b symbols apart; a final short block is kept as
    /// its own block type.
    NonOverlapping,
    /// Every window of b symbols (n - b + 1 blocks).
    Sliding,
};

/// Empirical block distribution of a sequence, entropies in bits.
struct EntropyReport {
    std::size_t block_size = 1;
    BlockMode mode = BlockMode::NonOverlapping;
    std::size_t block_count = 0;
    /// Entropy of the single-symbol distribution.
    double h_symbol = 0.0;
    /// Entropy of the block distribution (bits per block).
    double h_block = 0.0;
    std::map<std::vector<Symbol>, double> probabilities;
};

/// Throws ValidationError unless 1 <= b <= n.
EntropyReport shannon_entropy(const Sequence& x, std::size_t b,
                              BlockMode mode = BlockMode::NonOverlapping);

/// Entropy of the block distribution only (no report object).
double block_entropy(std::span<const Symbol> x, std::size_t b,
                     BlockMode mode = BlockMode::NonOverlapping);

inline constexpr std::size_t kDefaultEntropyWindow = 8;

struct EntropyRate {
    double rate = 0.0;
    std::size_t block_size = 1;
};

/// min over b = 1..min(w, n) of block_entropy(x, b) / b; the smallest
/// minimizing b is reported. Throws ValidationError when w == 0 or x is
/// empty.
EntropyRate entropy_rate(std::span<const Symbol> x, std::size_t w = kDefaultEntropyWindow,
                         BlockMode mode = BlockMode::NonOverlapping);
inline EntropyRate entropy_rate(const Sequence& x, std::size_t w = kDefaultEntropyWindow,
                                BlockMode mode = BlockMode::NonOverlapping)
{
    return entropy_rate(x.symbols(), w, mode);
}

/// -sum p log2 p over the given counts (zeros ignored).
double entropy_of_counts(std::span<const std::size_t> counts);

} // namespace cxlab
