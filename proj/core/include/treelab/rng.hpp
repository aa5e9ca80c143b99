#pragma once

#include <cstdint>
#include <limits>

namespace treelab {

/// SplitMix64 (Steele, Lea & Flood 2014). Small, fast, and fully specified, so
/// every platform draws the same stream for a given seed.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection,
    /// unbiased and independent of the standard library's distributions.
    std::uint64_t bounded(std::uint64_t bound) noexcept;

private:
    std::uint64_t state_;
};

/// The SplitMix64 output finalizer applied to a single word.
std::uint64_t mix64(std::uint64_t value) noexcept;

/// Seed for the index-th child stream of base_seed, e.g. one per bootstrap.
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) noexcept;

}  // namespace treelab
