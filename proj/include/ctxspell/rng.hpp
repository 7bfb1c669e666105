#ifndef CTXSPELL_RNG_HPP
#define CTXSPELL_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace ctxspell {

// All randomness flows through this wrapper so runs replay bit-identically
// on any platform: std::mt19937_64 has a standard-mandated output sequence,
// and the derived draws below avoid std::uniform_int_distribution, whose
// mapping is implementation-defined.
class rng {
public:
    explicit rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform integer in [0, n) by rejection sampling (unbiased).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

    /// Bernoulli(p) from the top 53 bits of one draw.
    bool bernoulli(double p) {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53 < p;
    }

    char lowercase_letter() { return static_cast<char>('a' + below(26)); }

private:
    std::mt19937_64 eng_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Stable per-coordinate seed derivation (independent of iteration order).
inline std::uint64_t mix_seed(std::uint64_t base, std::string_view doc_id, std::uint64_t sent,
                              std::uint64_t tok) {
    std::uint64_t h = splitmix64(base ^ fnv1a(doc_id));
    h = splitmix64(h ^ sent);
    h = splitmix64(h ^ (tok << 1));
    return h;
}

} // namespace ctxspell

#endif
