#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace coregraph {

// 64-bit FNV-1a. Used for input/output digests in run manifests and for
// deriving RNG streams from textual tags.
inline std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::string_view s) {
    return fnv1a64(s.data(), s.size());
}

// SplitMix64 (Steele, Lea & Flood, "Fast Splittable Pseudorandom Number
// Generators"). State advances by the golden-ratio increment; each output is
// a finalizer over the state. Chosen because the full sequence is defined by
// plain 64-bit integer arithmetic, so seeds reproduce across languages.
//
// Stream-splitting rule: every operation that consumes randomness draws from
// its own stream, derived as
//     state0 = mix64(seed ^ fnv1a64(tag) ^ index)
// where `tag` is a fixed string naming the consumer (e.g. "select.random")
// and `index` distinguishes replicas (per-class runs, bins). Equal configs
// therefore produce byte-identical results regardless of call interleaving.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    static std::uint64_t mix64(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in {0, 1, ..., bound-1}; unbiased via rejection. bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Standard normal via Box-Muller. Two draws per call, no caching, so the
    // consumed stream positions depend only on the call count.
    double next_gaussian() {
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    std::uint64_t state_;
};

inline SplitMix64 rng_stream(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0) {
    return SplitMix64(SplitMix64::mix64(seed ^ fnv1a64(tag) ^ index));
}

}  // namespace coregraph
