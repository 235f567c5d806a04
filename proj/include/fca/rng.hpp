#pragma once

#include <cstdint>

#include "fca/rational.hpp"

namespace fca {

// Counter-based generator: every draw is a stateless hash of its key, so
// parallel trials and overlapping windows reproduce bit-for-bit regardless
// of scheduling.

inline uint64_t mix64(uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

inline uint64_t hash_combine(uint64_t h, uint64_t v) {
    return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

inline uint64_t cell_hash(uint64_t seed, int64_t x, int64_t y, uint64_t trial = 0, uint64_t stream = 0) {
    uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
    h = hash_combine(h, static_cast<uint64_t>(x));
    h = hash_combine(h, static_cast<uint64_t>(y));
    h = hash_combine(h, trial);
    h = hash_combine(h, stream);
    return h;
}

// Exact threshold test: hash/2^64 < p, no floating point.
inline bool bernoulli_hash(uint64_t h, Rat p) {
    if (p.num <= 0) return false;
    if (p.num >= p.den) return true;
    unsigned __int128 lhs = static_cast<unsigned __int128>(h) * static_cast<uint64_t>(p.den);
    unsigned __int128 rhs = static_cast<unsigned __int128>(static_cast<uint64_t>(p.num)) << 64;
    return lhs < rhs;
}

inline double u01(uint64_t h) { return (h >> 11) * (1.0 / 9007199254740992.0); }

// Small sequential generator for test-side sampling.
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    uint64_t below(uint64_t n) { return next() % n; }
};

}  // namespace fca
