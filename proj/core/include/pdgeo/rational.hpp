#ifndef PDGEO_RATIONAL_HPP
#define PDGEO_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace pdgeo {

// Exact rational scalar. mpq_class keeps values canonical (gcd = 1,
// denominator > 0), which is the invariant everything downstream relies on.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat rat_from_string(const std::string& s) {
    Rat q(s);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }

inline std::string to_string(const Rat& q) { return q.get_str(); }

// Crude size measure (bits of numerator plus denominator); used only for
// pivot selection heuristics, never for results.
inline std::size_t rat_bits(const Rat& q) {
    return mpz_sizeinbase(q.get_num_mpz_t(), 2) +
           mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

}  // namespace pdgeo

#endif  // PDGEO_RATIONAL_HPP
