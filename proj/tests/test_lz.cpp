#include "cxlab/error.hpp"
#include "cxlab/lz.hpp"
#include "cxlab/rng.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace cxlab;

namespace {

std::string phrase_text(const ParseResult& p, std::size_t id)
{
    std::string s;
    for (Symbol c : p.dictionary.at(id).symbols)
        s += p.labels.empty() ? static_cast<char>('0' + c) : p.labels[c];
    return s;
}

std::string random_text(Rng& rng, std::size_t n, std::size_t k)
{
    std::string s;
    for (std::size_t i = 0; i < n; ++i)
        s += static_cast<char>('a' + rng.below(k));
    return s;
}

}

TEST_SUITE("lzfamily") {

TEST_CASE("lzw golden values")
{
    const auto p = lzw_encode(Sequence::from_text("abracadabra"));
    CHECK(p.c2() == 9);
    CHECK(p.c1() == 13);
    CHECK(p.compressed_bits == 32);
    CHECK(lzw_encode(Sequence::from_text("aaaa")).c2() == 3);
    CHECK(lzw_encode(Sequence::from_text("a")).c2() == 1);
    CHECK(lzw_encode(Sequence::from_text(std::string(16, 'z'))).c2() == 6);
}

TEST_CASE("lzw phrases match the textbook coder")
{
    Rng rng(17);
    for (int t = 0; t < 400; ++t) {
        const auto text = random_text(rng, 1 + rng.below(80), 1 + rng.below(4));
        const auto p = lzw_encode(Sequence::from_text(text));
        const auto expect = oracle::lzw_phrases(text);
        REQUIRE(p.c2() == expect.size());
        for (std::size_t i = 0; i < expect.size(); ++i)
            CHECK(phrase_text(p, p.codewords[i]) == expect[i]);
        const auto m = lzw_metrics(Sequence::from_text(text).symbols());
        CHECK(m.c1 == p.c1());
        CHECK(m.c2 == p.c2());
        CHECK(m.compressed_bits == p.compressed_bits);
    }
}

TEST_CASE("lz_prefix factors")
{
    const auto z16 = Sequence::from_text(std::string(16, 'z'));
    CHECK(lz_prefix_factor_lengths(z16.symbols()) == std::vector<std::size_t>{1, 1, 2, 4, 8});
    CHECK(lz_prefix_parse(z16).c2() == 5);
    const auto ab = Sequence::from_text("ababab");
    CHECK(lz_prefix_factor_lengths(ab.symbols()) == std::vector<std::size_t>{1, 1, 2, 2});
}

TEST_CASE("round trip: exhaustive binary strings up to length 12")
{
    for (std::size_t n = 1; n <= 12; ++n)
        for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
            std::vector<Symbol> v(n);
            for (std::size_t i = 0; i < n; ++i)
                v[i] = (bits >> i) & 1;
            const Sequence x(v, 2);
            REQUIRE(decode(lzw_encode(x)) == x);
            REQUIRE(decode(lz_prefix_parse(x)) == x);
        }
}

TEST_CASE("round trip: random strings up to length 64")
{
    Rng rng(5);
    for (int t = 0; t < 2000; ++t) {
        const std::size_t k = 1 + rng.below(4);
        const std::size_t n = 1 + rng.below(64);
        std::vector<Symbol> v(n);
        for (auto& s : v)
            s = static_cast<Symbol>(rng.below(k));
        const Sequence x(v, k);
        REQUIRE(decode(lzw_encode(x)) == x);
        REQUIRE(decode(lz_prefix_parse(x)) == x);
    }
}

TEST_CASE("corrupt parse is rejected")
{
    auto p = lzw_encode(Sequence::from_text("abab"));
    p.codewords.push_back(999);
    CHECK_THROWS_AS(decode(p), CorruptParse);
    auto q = lzw_encode(Sequence::from_text("abab"));
    q.dictionary[0].symbols = {7};
    CHECK_THROWS_AS(decode(q), CorruptParse);
}

TEST_CASE("lzw codeword count never decreases as a string grows")
{
    Rng rng(8);
    for (int t = 0; t < 50; ++t) {
        const auto text = random_text(rng, 300, 3);
        const auto x = Sequence::from_text(text);
        std::size_t prev = 0;
        for (std::size_t n = 1; n <= x.size(); ++n) {
            const auto c2 = lzw_metrics(x.symbols().first(n)).c2;
            REQUIRE(c2 >= prev);
            prev = c2;
        }
    }
}

TEST_CASE("codeword width")
{
    CHECK(codeword_width(1) == 1);
    CHECK(codeword_width(2) == 1);
    CHECK(codeword_width(3) == 2);
    CHECK(codeword_width(4) == 2);
    CHECK(codeword_width(5) == 3);
    CHECK(codeword_width(1024) == 10);
}

}
