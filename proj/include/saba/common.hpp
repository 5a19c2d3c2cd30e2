#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace saba {

using std::size_t;
using std::uint32_t;
using std::uint64_t;

// Contract violation (bad argument, precondition breach).
inline void check_arg(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// Data/IO error (malformed input, unusable graph).
inline void check_data(bool ok, const std::string& msg) {
    if (!ok) throw std::runtime_error(msg);
}

// splitmix64 finalizer. Bijective on 64-bit words.
inline constexpr uint64_t mix64(uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

// Counter-based stream word: word `index` of the stream anchored at `master`.
inline constexpr uint64_t counter_hash(uint64_t master, uint64_t index) noexcept {
    return mix64(master + (index + 1) * 0x9e3779b97f4a7c15ull);
}

// Derive an independent child stream anchor from (master, tag).
inline constexpr uint64_t substream(uint64_t master, uint64_t tag) noexcept {
    return mix64(master ^ mix64(tag + 0x632be59bd9b4e019ull));
}

} // namespace saba
