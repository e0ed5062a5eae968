#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cxlab {

using Symbol = std::uint8_t;

/// Largest alphabet a Sequence can carry (symbols are single bytes).
inline constexpr std::size_t kMaxAlphabet = 256;

/// A finite string over an explicit alphabet {0, ..., alphabet_size-1}.
///
/// `labels` optionally names each symbol with one printable character
/// (labels[s] is the character for symbol s); it is used only for display
/// and never affects any measure.
class Sequence {
public:
    Sequence() = default;

    /// Throws ValidationError if a symbol is outside the alphabet or the
    /// label string does not have exactly alphabet_size characters.
    Sequence(std::vector<Symbol> symbols, std::size_t alphabet_size, std::string labels = {});

    /// Alphabet built from distinct characters in first-occurrence order.
    static Sequence from_text(std::string_view text);

    /// Characters mapped through an explicit alphabet: symbol i is alphabet[i].
    static Sequence from_text(std::string_view text, std::string_view alphabet);

    std::span<const Symbol> symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    bool empty() const noexcept { return symbols_.empty(); }
    std::size_t alphabet_size() const noexcept { return alphabet_size_; }
    const std::string& labels() const noexcept { return labels_; }
    Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }

    /// First `n` symbols, same alphabet and labels.
    Sequence prefix(std::size_t n) const;

    /// Text rendering via labels; without labels, symbols 0-9 print as
    /// digits and larger ones as letters from 'a'.
    std::string to_string() const;

    /// Character used to print symbol `s`.
    char label_of(Symbol s) const noexcept;

    friend bool operator==(const Sequence&, const Sequence&) = default;

private:
    std::vector<Symbol> symbols_;
    std::size_t alphabet_size_ = 1;
    std::string labels_;
};

/// The 15-character string used in the ZBC experiments.
inline constexpr std::string_view kZbcString = "zbzbczbzbczbzbc";

enum class GeneratorKind {
    /// n characters drawn uniformly with replacement from the characters of
    /// kZbcString (6 z, 6 b, 3 c), or a true shuffle when `exact_shuffle`.
    ZbcPermutation,
    /// kZbcString repeated cyclically and truncated (deterministic).
    ZbcGrowing,
    /// `block` repeated cyclically and truncated (deterministic).
    Pattern,
    /// i.i.d. uniform symbols over `alphabet_size` letters A, B, C, ...
    UniformRandom,
};

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::UniformRandom;
    std::size_t length = 1;
    std::uint64_t seed = 0;
    std::uint64_t trial_index = 0;
    std::string block = "ABCDE";
    std::size_t alphabet_size = 4;
    /// ZbcPermutation only: Fisher-Yates shuffle of kZbcString extended
    /// cyclically to `length`, preserving its exact symbol counts.
    bool exact_shuffle = false;
};

/// Pure function of the spec. With-replacement and uniform kinds draw
/// symbols sequentially from the (seed, trial_index) stream, so a shorter
/// length yields a prefix of a longer one.
Sequence generate(const GeneratorSpec& spec);

/// True when the output does not depend on seed or trial_index.
bool is_deterministic(const GeneratorSpec& spec) noexcept;

} // namespace cxlab
