#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace seelab::rng {

// Counter-based generator: every variate is a pure function of a key tuple,
// so parallel workers can draw the same stream in any order and Monte Carlo
// results do not depend on scheduling.  The mixer is the splitmix64
// finalizer; two finalizer applications per output word.

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix(std::uint64_t x) {
    x += kGamma;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Distinct domains keep independent purposes (path noise, state sampling,
/// hypothesis sampling) on non-overlapping streams under one master seed.
enum class Domain : std::uint64_t {
    Wiener = 0,
    InitialState = 1,
    Hypothesis = 2,
    DualPool = 3,
};

inline std::uint64_t key(std::uint64_t seed, Domain domain, std::uint64_t a,
                         std::uint64_t b, std::uint64_t c) {
    std::uint64_t h = mix(seed);
    h = mix(h ^ static_cast<std::uint64_t>(domain));
    h = mix(h ^ a);
    h = mix(h ^ b);
    h = mix(h ^ c);
    return h;
}

/// i-th 64-bit word of the stream addressed by `k`.
inline std::uint64_t word(std::uint64_t k, std::uint64_t i) {
    return mix(k + i * kGamma);
}

/// Map 64 bits to the open interval (0,1).  The 52-bit lattice keeps every
/// value (k + 1/2) * 2^-52 exactly representable; with 53 bits the topmost
/// k + 0.5 would round up and the extreme input would land on 1.0.
inline double unit_open(std::uint64_t bits) {
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1p-52;
}

/// Standard normal variate for a key via Box-Muller (cosine branch).
inline double standard_normal(std::uint64_t k) {
    const double u1 = unit_open(word(k, 0));
    const double u2 = unit_open(word(k, 1));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline double standard_normal(std::uint64_t seed, Domain domain, std::uint64_t a,
                              std::uint64_t b, std::uint64_t c) {
    return standard_normal(key(seed, domain, a, b, c));
}

inline double uniform(std::uint64_t seed, Domain domain, std::uint64_t a,
                      std::uint64_t b, std::uint64_t c) {
    return unit_open(word(key(seed, domain, a, b, c), 0));
}

} // namespace seelab::rng
