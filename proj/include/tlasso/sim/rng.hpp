#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <vector>

namespace tlasso {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Counter-based generator: the i-th output is mix64(key + (i+1) * golden gamma).
/// Streams are split by hashing a tag into a fresh key, so sibling streams never
/// share state and can be created in any order.
class CounterRng {
  public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept : key_(key), counter_(counter) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    /// Child stream identified by `tag`; does not advance this stream.
    CounterRng split(std::uint64_t tag) const noexcept;

    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform() noexcept;

    std::uint64_t key() const noexcept { return key_; }
    std::uint64_t counter() const noexcept { return counter_; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

/// Seed for a node in a tree of streams, e.g. derive_seed(base, {trial, step}).
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) noexcept;

/// k distinct indices from 0..p-1 in draw order (partial Fisher-Yates).
std::vector<std::ptrdiff_t> sample_indices(std::ptrdiff_t p, std::ptrdiff_t k, CounterRng& rng);

}  // namespace tlasso
