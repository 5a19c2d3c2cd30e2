#pragma once

#include "saba/common.hpp"

#include <algorithm>
#include <vector>

// Stateless hash-based selection primitives. A neighbour choice is a pure
// function of (per-walk seed, current vertex, step, degree); no generator
// state survives between steps, which is what makes walks reorderable.

namespace saba {

// =============================================================================
// Hash state
// =============================================================================

// h(cur, l): 32-bit avalanche mix of the walk state (cur * 2^32 + l).
// The multiplier is the Murmur2 64-bit constant; configurable.
struct HashSpec {
    uint64_t multiplier = 0xc6a4a7935bd1e995ull;

    [[nodiscard]] uint32_t state(uint32_t vertex, uint32_t step) const noexcept {
        uint64_t x = (static_cast<uint64_t>(vertex) << 32) | static_cast<uint64_t>(step);
        x *= multiplier;
        x ^= x >> 47;
        x *= multiplier;
        x ^= x >> 47;
        return static_cast<uint32_t>(x >> 32);
    }
};

// h_max is exclusive: hash words live in [0, 2^32).
inline constexpr uint64_t kHashRange = uint64_t(1) << 32;

// =============================================================================
// Selectors
// =============================================================================

/// raw mod degree.
inline uint32_t select_mod(uint32_t raw, uint32_t degree) {
    check_arg(degree >= 1, "select_mod: degree must be >= 1");
    return raw % degree;
}

/// (seed ^ state) mod degree. Wraps around bucket boundaries.
inline uint32_t select_xor_mod(uint32_t seed, uint32_t state, uint32_t degree) {
    check_arg(degree >= 1, "select_xor_mod: degree must be >= 1");
    return (seed ^ state) % degree;
}

/// floor((seed ^ state) / 2^32 * degree), as the high word of a widening
/// multiply. Division-free and nondecreasing in (seed ^ state).
inline uint32_t select_scaled(uint32_t seed, uint32_t state, uint32_t degree) {
    check_arg(degree >= 1, "select_scaled: degree must be >= 1");
    return static_cast<uint32_t>((static_cast<uint64_t>(seed ^ state) * degree) >> 32);
}

// Unchecked core of select_scaled for hot loops (degree >= 1 guaranteed by
// graph connectivity at the call site).
inline constexpr uint32_t scaled_index(uint32_t raw, uint32_t degree) noexcept {
    return static_cast<uint32_t>((static_cast<uint64_t>(raw) * degree) >> 32);
}

enum class SelectorKind { NaiveMod, XorMod, Scaled };

inline const char* to_string(SelectorKind k) noexcept {
    switch (k) {
        case SelectorKind::NaiveMod: return "naive";
        case SelectorKind::XorMod: return "xor";
        case SelectorKind::Scaled: return "scaled";
    }
    return "?";
}

// =============================================================================
// Baseline stream source
// =============================================================================

// 64-bit LCG (Knuth multiplier family); emits the high 32 bits per step.
// Default raw-word source for the NaiveMod selector.
struct Lcg64 {
    uint64_t state;

    explicit constexpr Lcg64(uint64_t seed) noexcept : state(mix64(seed)) {}

    constexpr uint32_t next() noexcept {
        state = state * 0x5851f42d4c957f2dull + 0x14057b7ef767814full;
        return static_cast<uint32_t>(state >> 32);
    }
};

// =============================================================================
// Per-walk seeds
// =============================================================================

enum class SeedOrdering { AsGenerated, Sorted };

struct SeedSet {
    std::vector<uint32_t> seeds;
    SeedOrdering ordering = SeedOrdering::AsGenerated;
    uint64_t master_seed = 0;
};

// One 32-bit seed per walk from a counter hash of (master_seed, walk index).
// Graph-independent and reproducible in any order.
inline SeedSet gen_seeds(size_t count, uint64_t master_seed, SeedOrdering ordering) {
    check_arg(count >= 1, "gen_seeds: count must be >= 1");
    SeedSet set;
    set.ordering = ordering;
    set.master_seed = master_seed;
    set.seeds.resize(count);
    for (size_t i = 0; i < count; ++i)
        set.seeds[i] = static_cast<uint32_t>(counter_hash(master_seed, i) >> 32);
    if (ordering == SeedOrdering::Sorted)
        std::sort(set.seeds.begin(), set.seeds.end());
    return set;
}

/// Seeds sorted ascending: the bouquet arrangement.
inline SeedSet gen_sorted_seeds(size_t count, uint64_t master_seed) {
    return gen_seeds(count, master_seed, SeedOrdering::Sorted);
}

} // namespace saba
