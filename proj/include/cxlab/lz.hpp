#pragma once

#include "cxlab/sequence.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cxlab {

enum class ParseKind { Lzw, LzPrefix };

struct Phrase {
    std::size_t id = 0;
    std::vector<Symbol> symbols;
};

/// Dictionary plus codeword list produced by a dictionary coder.
///
/// Invariant: concatenating the phrases named by `codewords` reproduces the
/// input. c1() is the dictionary size, c2() the number of emitted codewords.
struct ParseResult {
    ParseKind kind = ParseKind::Lzw;
    std::size_t alphabet_size = 1;
    std::string labels;
    std::vector<Phrase> dictionary;
    std::vector<std::size_t> codewords;
    /// Sum of codeword widths, each ceil(log2(dictionary size at emission)),
    /// at least one bit.
    std::uint64_t compressed_bits = 0;

    std::size_t c1() const noexcept { return dictionary.size(); }
    std::size_t c2() const noexcept { return codewords.size(); }
};

/// Size metrics without materializing phrases (hot path for experiments).
struct ParseMetrics {
    std::size_t c1 = 0;
    std::size_t c2 = 0;
    std::uint64_t compressed_bits = 0;
};

/// Bits needed to address one of `entries` dictionary entries (>= 1).
unsigned codeword_width(std::size_t entries) noexcept;

/// LZW with the dictionary seeded by the symbols present in x, in
/// first-occurrence order, and greedy longest-match extension.
ParseResult lzw_encode(const Sequence& x);
ParseMetrics lzw_metrics(std::span<const Symbol> x);

/// Left-to-right factorization in which each factor is the longest string
/// already constructed that prefixes the remainder: a single symbol, or a
/// prefix of x ending at an earlier factor boundary (earlier factors are
/// themselves of one of these two forms). z^16 parses as z|z|zz|zzzz|zzzzzzzz.
///
/// The dictionary holds the seed symbols and every boundary prefix of length
/// at least two, so c2() - 1 joins assemble x.
ParseResult lz_prefix_parse(const Sequence& x);
ParseMetrics lz_prefix_metrics(std::span<const Symbol> x);

/// Factor lengths of lz_prefix_parse, in order.
std::vector<std::size_t> lz_prefix_factor_lengths(std::span<const Symbol> x);

/// Concatenation of the codeword phrases. Throws CorruptParse on a codeword
/// that names no dictionary entry or a phrase symbol outside the alphabet.
Sequence decode(const ParseResult& p);

} // namespace cxlab
