#pragma once
// Portable random draws. std::uniform_int_distribution and std::shuffle are
// implementation-defined, so sampled output would differ between standard
// libraries; these helpers only rely on the fully specified mt19937_64.

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace rulesmith {

using Rng = std::mt19937_64;

// Uniform in [0, bound); bound > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

// Moves a uniform random k-subset to the front of `items` (partial Fisher-Yates).
template <typename T>
void partial_shuffle(std::span<T> items, std::size_t k, Rng& rng) {
    const std::size_t n = items.size();
    if (k > n) k = n;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, n - i));
        std::swap(items[i], items[j]);
    }
}

// Independent stream for (seed, salt).
inline Rng derive_rng(std::uint64_t seed, std::uint64_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
    return Rng(seq);
}

}  // namespace rulesmith
