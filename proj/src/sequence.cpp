#include "cxlab/sequence.hpp"

#include "cxlab/error.hpp"
#include "cxlab/rng.hpp"

#include <algorithm>
#include <array>

namespace cxlab {

Sequence::Sequence(std::vector<Symbol> symbols, std::size_t alphabet_size, std::string labels)
    : symbols_(std::move(symbols)), alphabet_size_(alphabet_size), labels_(std::move(labels))
{
    if (alphabet_size_ == 0 || alphabet_size_ > kMaxAlphabet)
        throw ValidationError("alphabet size must be in [1, 256]");
    if (!labels_.empty() && labels_.size() != alphabet_size_)
        throw ValidationError("label count does not match alphabet size");
    for (Symbol s : symbols_)
        if (s >= alphabet_size_)
            throw ValidationError("symbol outside alphabet");
}

Sequence Sequence::from_text(std::string_view text)
{
    if (text.empty())
        throw ValidationError("empty sequence");
    std::array<int, 256> code{};
    code.fill(-1);
    std::string labels;
    std::vector<Symbol> symbols;
    symbols.reserve(text.size());
    for (char ch : text) {
        auto byte = static_cast<unsigned char>(ch);
        if (code[byte] < 0) {
            code[byte] = static_cast<int>(labels.size());
            labels.push_back(ch);
        }
        symbols.push_back(static_cast<Symbol>(code[byte]));
    }
    const std::size_t k = labels.size();
    return Sequence(std::move(symbols), k, std::move(labels));
}

Sequence Sequence::from_text(std::string_view text, std::string_view alphabet)
{
    if (text.empty())
        throw ValidationError("empty sequence");
    if (alphabet.empty() || alphabet.size() > kMaxAlphabet)
        throw ValidationError("alphabet size must be in [1, 256]");
    std::array<int, 256> code{};
    code.fill(-1);
    for (std::size_t i = 0; i < alphabet.size(); ++i) {
        auto byte = static_cast<unsigned char>(alphabet[i]);
        if (code[byte] >= 0)
            throw ValidationError("duplicate character in alphabet");
        code[byte] = static_cast<int>(i);
    }
    std::vector<Symbol> symbols;
    symbols.reserve(text.size());
    for (char ch : text) {
        int c = code[static_cast<unsigned char>(ch)];
        if (c < 0)
            throw ValidationError(std::string("character '") + ch + "' not in alphabet");
        symbols.push_back(static_cast<Symbol>(c));
    }
    return Sequence(std::move(symbols), alphabet.size(), std::string(alphabet));
}

Sequence Sequence::prefix(std::size_t n) const
{
    n = std::min(n, symbols_.size());
    Sequence out;
    out.symbols_.assign(symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(n));
    out.alphabet_size_ = alphabet_size_;
    out.labels_ = labels_;
    return out;
}

char Sequence::label_of(Symbol s) const noexcept
{
    if (!labels_.empty())
        return labels_[s];
    if (s < 10)
        return static_cast<char>('0' + s);
    if (s < 36)
        return static_cast<char>('a' + (s - 10));
    return '?';
}

std::string Sequence::to_string() const
{
    std::string out;
    out.reserve(symbols_.size());
    for (Symbol s : symbols_)
        out.push_back(label_of(s));
    return out;
}

namespace {

std::string letters(std::size_t k)
{
    std::string out;
    for (std::size_t i = 0; i < k; ++i)
        out.push_back(i < 26 ? static_cast<char>('A' + i) : static_cast<char>(i < 52 ? 'a' + (i - 26) : '0' + (i - 52) % 10));
    return out;
}

Sequence repeat_block(std::string_view block, std::size_t length)
{
    std::string text;
    text.reserve(length);
    for (std::size_t i = 0; i < length; ++i)
        text.push_back(block[i % block.size()]);
    return Sequence::from_text(text);
}

} // namespace

bool is_deterministic(const GeneratorSpec& spec) noexcept
{
    return spec.kind == GeneratorKind::Pattern || spec.kind == GeneratorKind::ZbcGrowing;
}

Sequence generate(const GeneratorSpec& spec)
{
    if (spec.length == 0)
        throw ValidationError("empty sequence");
    Rng rng = Rng::for_stream(spec.seed, spec.trial_index);

    switch (spec.kind) {
    case GeneratorKind::ZbcPermutation: {
        // Fixed alphabet z, b, c so that every trial shares symbol numbering.
        constexpr std::string_view alphabet = "zbc";
        std::vector<Symbol> source;
        for (char ch : kZbcString)
            source.push_back(static_cast<Symbol>(alphabet.find(ch)));
        std::vector<Symbol> out(spec.length);
        if (spec.exact_shuffle) {
            for (std::size_t i = 0; i < spec.length; ++i)
                out[i] = source[i % source.size()];
            for (std::size_t i = spec.length; i > 1; --i)
                std::swap(out[i - 1], out[rng.below(i)]);
        } else {
            for (auto& s : out)
                s = source[rng.below(source.size())];
        }
        return Sequence(std::move(out), alphabet.size(), std::string(alphabet));
    }
    case GeneratorKind::ZbcGrowing:
        return repeat_block(kZbcString, spec.length);
    case GeneratorKind::Pattern:
        if (spec.block.empty())
            throw ValidationError("pattern block is empty");
        return repeat_block(spec.block, spec.length);
    case GeneratorKind::UniformRandom: {
        if (spec.alphabet_size == 0 || spec.alphabet_size > kMaxAlphabet)
            throw ValidationError("alphabet size must be in [1, 256]");
        std::vector<Symbol> out(spec.length);
        for (auto& s : out)
            s = static_cast<Symbol>(rng.below(spec.alphabet_size));
        return Sequence(std::move(out), spec.alphabet_size,
                        spec.alphabet_size <= 62 ? letters(spec.alphabet_size) : std::string{});
    }
    }
    throw ValidationError("unknown generator kind");
}

} // namespace cxlab
