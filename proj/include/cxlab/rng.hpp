#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace cxlab {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Constants:
/// increment 0x9E3779B97F4A7C15, multipliers 0xBF58476D1CE4E5B9 and
/// 0x94D049BB133111EB, shifts 30/27/31.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept
{
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Hash of (seed, stream) used to derive independent per-trial generators.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept
{
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (stream * 0xD1B54A32D192ED03ULL);
    return splitmix64(s);
}

/// xoshiro256** 1.0 (Blackman & Vigna), state seeded through SplitMix64.
///
/// All sampling helpers below are implemented here rather than through
/// <random> distributions, whose algorithms are implementation-defined;
/// this keeps every experiment bit-reproducible across standard libraries.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit constexpr Rng(std::uint64_t seed) noexcept
    {
        std::uint64_t s = seed;
        for (auto& w : state_)
            w = splitmix64(s);
    }

    /// Generator for trial `stream` of an experiment seeded with `seed`.
    static constexpr Rng for_stream(std::uint64_t seed, std::uint64_t stream) noexcept
    {
        return Rng(derive_seed(seed, stream));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    constexpr result_type operator()() noexcept
    {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform integer in [0, bound) by Lemire's nearly-divisionless method.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept
    {
        if (bound <= 1)
            return 0;
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform() noexcept
    {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Standard normal variate (Box-Muller, one value per call).
    double normal() noexcept
    {
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
    {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4]{};
};

} // namespace cxlab
