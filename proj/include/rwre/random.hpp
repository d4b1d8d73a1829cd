#pragma once

// Portable, counter-based pseudo-randomness. Nothing here touches <random>
// distributions, whose output is implementation-defined; every sampler below
// produces the same bits on every platform.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>

namespace rwre {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

/// One output of a SplitMix64 generator whose state is `x`: the state is
/// advanced by the golden gamma and then passed through the finalizer.
/// A bijection on 64-bit integers.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    std::uint64_t z = x + kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed of the independent stream number `index` derived from `base`.
constexpr std::uint64_t stream_seed(std::uint64_t base, std::uint64_t index) noexcept
{
    return splitmix64(base ^ index);
}

/// SplitMix64 as a counter-based engine: output i is splitmix64(seed + i*gamma).
/// Satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    constexpr explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept
    {
        result_type out = splitmix64(state_);
        state_ += kGolden;
        return out;
    }

    constexpr std::uint64_t state() const noexcept { return state_; }

private:
    std::uint64_t state_;
};

/// Uniform double in [0, 1) with 53 random bits.
template <class Engine>
double uniform01(Engine& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in (0, 1); safe to take the log of.
template <class Engine>
double uniform_open01(Engine& rng)
{
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Unbiased integer in [0, n), Lemire's multiply-and-reject.
template <class Engine>
std::uint64_t uniform_index(Engine& rng, std::uint64_t n)
{
    unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
        const std::uint64_t threshold = (0 - n) % n;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(rng()) * n;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

/// Standard normal via Box-Muller; one output per call, two uniforms consumed.
template <class Engine>
double standard_normal(Engine& rng)
{
    const double u1 = uniform_open01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Log of a Gamma(shape, 1) variate by Marsaglia-Tsang. Shapes below one use
/// the boost Gamma(a) = Gamma(a + 1) * U^(1/a), kept in the log domain so very
/// small shapes do not underflow to zero.
template <class Engine>
double log_gamma_variate(Engine& rng, double shape)
{
    double boost = 0.0;
    if (shape < 1.0) {
        boost = std::log(uniform_open01(rng)) / shape;
        shape += 1.0;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open01(rng);
        if (u < 1.0 - 0.0331 * (x * x) * (x * x)
            || std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return std::log(d * v) + boost;
        }
    }
}

/// Digamma function for x > 0: upward recurrence then the asymptotic series.
inline double digamma(double x)
{
    double result = 0.0;
    while (x < 10.0) {
        result -= 1.0 / x;
        x += 1.0;
    }
    const double f = 1.0 / (x * x);
    result += std::log(x) - 0.5 / x
        - f * (1.0 / 12 - f * (1.0 / 120 - f * (1.0 / 252 - f * (1.0 / 240 - f / 132))));
    return result;
}

/// Streaming mean and variance (Welford).
class RunningStats {
public:
    void add(double x) noexcept
    {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }

    std::size_t count() const noexcept { return count_; }
    double mean() const noexcept { return mean_; }
    double variance() const noexcept
    {
        return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
    }
    double std_error() const noexcept
    {
        return count_ > 0 ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
    }

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

} // namespace rwre
