#include "tlasso/sim/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace tlasso {
namespace {

constexpr std::uint64_t golden_gamma = 0x9e3779b97f4a7c15ULL;

}  // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

CounterRng::result_type CounterRng::operator()() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * golden_gamma);
}

CounterRng CounterRng::split(std::uint64_t tag) const noexcept {
    return CounterRng(mix64(key_ ^ mix64(tag + golden_gamma)));
}

double CounterRng::uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) noexcept {
    std::uint64_t h = mix64(base);
    for (std::uint64_t v : path) h = mix64(h ^ mix64(v + golden_gamma));
    return h;
}

std::vector<std::ptrdiff_t> sample_indices(std::ptrdiff_t p, std::ptrdiff_t k, CounterRng& rng) {
    if (k < 0 || k > p) throw std::invalid_argument("sample size must lie in [0, p]");
    std::vector<std::ptrdiff_t> pool(static_cast<std::size_t>(p));
    std::iota(pool.begin(), pool.end(), std::ptrdiff_t{0});
    for (std::ptrdiff_t i = 0; i < k; ++i) {
        const auto remaining = static_cast<double>(p - i);
        const std::ptrdiff_t pick = i + std::min(static_cast<std::ptrdiff_t>(rng.uniform() * remaining), p - i - 1);
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick)]);
    }
    pool.resize(static_cast<std::size_t>(k));
    return pool;
}

}  // namespace tlasso
