#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace trendskew {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Sub-stream seed for (seed, label). Used to give every contract, path and
/// purpose its own stream so results do not depend on generation order.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) noexcept;
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Counter-based generator: draw i is a pure function of (key, i).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

    std::uint64_t key() const noexcept { return key_; }

    std::uint64_t bits(std::uint64_t counter) const noexcept;

    /// Uniform on the open interval (0, 1).
    double uniform(std::uint64_t counter) const noexcept;

    /// Standard normal via Box-Muller on the uniform pair (2i, 2i+1).
    double normal(std::uint64_t index) const noexcept;

private:
    std::uint64_t key_;
};

/// Sequential cursor over a CounterRng. Also models
/// UniformRandomBitGenerator so it can drive <random> distributions.
class RngStream {
public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t key) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept { return rng_.bits(next_++); }
    double uniform() noexcept { return rng_.uniform(next_++); }
    double normal() noexcept { return normals_.normal(normal_next_++); }

private:
    CounterRng rng_;
    CounterRng normals_;  // separate key: Box-Muller reads counters 2i and 2i+1
    std::uint64_t next_ = 0;
    std::uint64_t normal_next_ = 0;
};

}  // namespace trendskew
