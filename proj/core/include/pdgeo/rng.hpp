#ifndef PDGEO_RNG_HPP
#define PDGEO_RNG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pdgeo/rational.hpp"

namespace pdgeo {

// Deterministic 64-bit stream (splitmix64). Randomness is never global: every
// randomized operation takes an explicit Rng (or a seed it derives one from),
// so results are reproducible per seed across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound), bound > 0, via rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % bound;
    }

    long next_int(long lo, long hi) {  // inclusive range
        return lo + static_cast<long>(
                        next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Integer-valued rational with numerator uniform in [-height, height].
    Rat next_rat(long height) { return rat(next_int(-height, height)); }

    // Nonzero variant, for coefficients that must not degenerate.
    Rat next_rat_nonzero(long height) {
        Rat q = next_rat(height);
        while (is_zero(q)) q = next_rat(height);
        return q;
    }

    std::vector<Rat> next_rat_vector(std::size_t len, long height) {
        std::vector<Rat> v(len);
        for (auto& x : v) x = next_rat(height);
        return v;
    }

    // Derived independent stream, tagged so parallel consumers do not share
    // state.
    Rng fork(std::uint64_t tag) {
        std::uint64_t s = next_u64();
        return Rng(s ^ (tag * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
    }

private:
    std::uint64_t state_;
};

// Stable stream derivation from a user seed and a purpose tag.
inline Rng seeded_stream(std::uint64_t seed, const std::string& tag) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return Rng(seed ^ h);
}

}  // namespace pdgeo

#endif  // PDGEO_RNG_HPP
