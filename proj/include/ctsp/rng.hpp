#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ctsp {

// The standard distributions and std::shuffle are implementation-defined;
// these helpers keep seeded runs reproducible across standard libraries.

/// Unbiased uniform draw from {0, ..., bound-1}; bound >= 1.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

template <typename T>
void fisher_yates_shuffle(std::vector<T>& items, std::mt19937_64& rng) {
    for (std::size_t i = items.size(); i > 1; --i)
        std::swap(items[i - 1], items[uniform_below(rng, i)]);
}

} // namespace ctsp
