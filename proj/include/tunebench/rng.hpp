#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace tunebench {

// SplitMix64 finalizer. Used both to decorrelate raw seeds and as the
// mixing step of the seed-derivation chain.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_u64(std::uint64_t h, std::uint64_t v) {
    return splitmix64(h ^ splitmix64(v));
}

inline std::uint64_t hash_str(std::uint64_t h, std::string_view s) {
    std::uint64_t f = 0xcbf29ce484222325ULL; // FNV-1a 64
    for (unsigned char c : s) {
        f ^= c;
        f *= 0x100000001b3ULL;
    }
    return hash_u64(h, f);
}

inline std::uint64_t hash_f64(std::uint64_t h, double v) {
    return hash_u64(h, std::bit_cast<std::uint64_t>(v));
}

// Child seed for item k of a batch seeded with `base`.
inline std::uint64_t child_seed(std::uint64_t base, std::uint64_t k) {
    return hash_u64(base, k);
}

// Deterministic RNG. The uniform/normal transforms are hand-rolled on top
// of mt19937_64 so that streams do not depend on the standard library's
// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(splitmix64(seed)) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_u64() % n); }

    bool chance(double p) { return uniform() < p; }

    // Standard normal via Box-Muller, spare value cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace tunebench
