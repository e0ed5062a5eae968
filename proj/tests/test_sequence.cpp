#include "cxlab/error.hpp"
#include "cxlab/rng.hpp"
#include "cxlab/sequence.hpp"

#include <doctest.h>

#include <set>

using namespace cxlab;

TEST_SUITE("seqcore") {

TEST_CASE("from_text builds the alphabet in first-occurrence order")
{
    const auto x = Sequence::from_text("abracadabra");
    CHECK(x.size() == 11);
    CHECK(x.alphabet_size() == 5);
    CHECK(x.labels() == "abrcd");
    CHECK(x.to_string() == "abracadabra");

    CHECK(Sequence::from_text("zzzz").alphabet_size() == 1);
    CHECK(Sequence::from_text("zbzbc").labels() == "zbc");
    CHECK_THROWS_AS(Sequence::from_text(""), ValidationError);
}

TEST_CASE("explicit alphabet mapping")
{
    const auto x = Sequence::from_text("1001", "01");
    CHECK(x[0] == 1);
    CHECK(x[1] == 0);
    CHECK_THROWS_AS(Sequence::from_text("102", "01"), ValidationError);
}

TEST_CASE("constructor validates symbols and labels")
{
    CHECK_THROWS_AS(Sequence({0, 2}, 2), ValidationError);
    CHECK_THROWS_AS(Sequence({0, 1}, 2, "abc"), ValidationError);
    CHECK_NOTHROW(Sequence({0, 1}, 2, "xy"));
}

TEST_CASE("pattern generator repeats and truncates")
{
    GeneratorSpec s;
    s.kind = GeneratorKind::Pattern;
    s.block = "ABCDE";
    s.length = 10;
    CHECK(generate(s).to_string() == "ABCDEABCDE");
    s.length = 3;
    CHECK(generate(s).to_string() == "ABC");
    s.kind = GeneratorKind::ZbcGrowing;
    s.length = 20;
    CHECK(generate(s).to_string() == "zbzbczbzbczbzbczbzbc");
}

TEST_CASE("length zero is rejected")
{
    GeneratorSpec s;
    s.length = 0;
    CHECK_THROWS_WITH_AS(generate(s), doctest::Contains("empty sequence"), ValidationError);
}

TEST_CASE("generation is a pure function of its inputs")
{
    for (auto kind : {GeneratorKind::ZbcPermutation, GeneratorKind::UniformRandom}) {
        GeneratorSpec s;
        s.kind = kind;
        s.length = 40;
        s.seed = 99;
        s.trial_index = 5;
        CHECK(generate(s) == generate(s));
        GeneratorSpec other = s;
        other.trial_index = 6;
        CHECK_FALSE(generate(s) == generate(other));
    }
}

TEST_CASE("trial streams do not depend on earlier trials")
{
    GeneratorSpec s;
    s.kind = GeneratorKind::ZbcPermutation;
    s.length = 15;
    s.seed = 3;
    s.trial_index = 7;
    const auto direct = generate(s);
    for (std::uint64_t t = 0; t < 7; ++t) {
        GeneratorSpec e = s;
        e.trial_index = t;
        (void)generate(e);
    }
    CHECK(generate(s) == direct);
}

TEST_CASE("shorter lengths give prefixes of longer ones")
{
    GeneratorSpec s;
    s.kind = GeneratorKind::UniformRandom;
    s.seed = 11;
    s.length = 100;
    const auto full = generate(s);
    s.length = 37;
    CHECK(generate(s) == full.prefix(37));
}

TEST_CASE("zbc sampling matches the source multiset frequencies")
{
    // 6 z, 6 b, 3 c in the base string.
    std::size_t z = 0, b = 0, c = 0, total = 0;
    for (std::uint64_t t = 0; t < 10'000; ++t) {
        GeneratorSpec s;
        s.kind = GeneratorKind::ZbcPermutation;
        s.length = 15;
        s.seed = 2024;
        s.trial_index = t;
        for (char ch : generate(s).to_string()) {
            z += ch == 'z';
            b += ch == 'b';
            c += ch == 'c';
            ++total;
        }
    }
    CHECK(std::abs(static_cast<double>(z) / total - 6.0 / 15) < 0.02);
    CHECK(std::abs(static_cast<double>(b) / total - 6.0 / 15) < 0.02);
    CHECK(std::abs(static_cast<double>(c) / total - 3.0 / 15) < 0.02);
}

TEST_CASE("exact shuffle keeps symbol counts")
{
    GeneratorSpec s;
    s.kind = GeneratorKind::ZbcPermutation;
    s.exact_shuffle = true;
    s.length = 15;
    for (std::uint64_t t = 0; t < 50; ++t) {
        s.trial_index = t;
        const auto text = generate(s).to_string();
        CHECK(std::count(text.begin(), text.end(), 'z') == 6);
        CHECK(std::count(text.begin(), text.end(), 'b') == 6);
        CHECK(std::count(text.begin(), text.end(), 'c') == 3);
    }
}

TEST_CASE("rng: bounded draws stay in range and cover it")
{
    Rng rng(1);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 10'000; ++i) {
        const auto v = rng.below(7);
        REQUIRE(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
    double sum = 0.0;
    for (int i = 0; i < 100'000; ++i)
        sum += rng.uniform();
    CHECK(std::abs(sum / 100'000 - 0.5) < 0.01);
}

TEST_CASE("rng: fixed reference outputs")
{
    // xoshiro256** seeded through SplitMix64 from 0; frozen values.
    std::uint64_t s = 0;
    CHECK(splitmix64(s) == 0xE220A8397B1DCDAFULL);
    Rng rng(0);
    const auto first = rng();
    Rng again(0);
    CHECK(again() == first);
}

}
