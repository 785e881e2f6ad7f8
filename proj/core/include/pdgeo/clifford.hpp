#ifndef PDGEO_CLIFFORD_HPP
#define PDGEO_CLIFFORD_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "pdgeo/jets.hpp"
#include "pdgeo/matrix.hpp"
#include "pdgeo/rng.hpp"

namespace pdgeo {

// Element of the exterior algebra on C^m, as a sparse subset-indexed
// coefficient table; carries the Clifford product for a chosen form Q.
struct CliffordElem {
    std::size_t dim = 0;
    std::map<std::uint32_t, Rat> coeffs;  // subset mask -> coefficient

    static CliffordElem scalar(std::size_t dim, const Rat& c);
    static CliffordElem vector(const RatVec& v);
    static CliffordElem blade(std::size_t dim, std::uint32_t mask,
                              const Rat& c);

    void add(std::uint32_t mask, const Rat& c);
    bool is_zero() const;
    // the degree-1 part as a vector; null when other degrees are present
    bool as_vector(RatVec& out) const;

    CliffordElem operator+(const CliffordElem& rhs) const;
    CliffordElem operator-(const CliffordElem& rhs) const;
    CliffordElem operator*(const Rat& c) const;
    bool operator==(const CliffordElem& rhs) const {
        return dim == rhs.dim && coeffs == rhs.coeffs;
    }
};

// Hyperbolic form [[0, I], [I, 0]] on C^m (m even): the default Q, whose
// maximal null subspaces are coordinate-spanned.
MatRat hyperbolic_form(std::size_t m);

// Clifford product on Lambda V determined by x o y = (x contracted into y)
// + x ^ y for vectors x; satisfies x o x = Q(x, x) 1 and extends so that the
// fundamental relation x o y + y o x = 2 Q(x, y) 1 holds.
CliffordElem clifford_mul(const CliffordElem& a, const CliffordElem& b,
                          const MatRat& Q);

// The involution a -> (-1)^r u_r o ... o u_1 on products of r vectors; acts
// on the exterior degree-k component by (-1)^{k(k+1)/2}.
CliffordElem reverse(const CliffordElem& a);

// rho(g) v = g o v o reverse(g); for g a product of unit vectors this is a
// Q-orthogonal transformation of V. Throws when the result leaves V.
RatVec rho(const CliffordElem& g, const RatVec& v, const MatRat& Q);

// proj_{Lambda^odd U} (v o alpha) for the split V = U + U' into the two
// coordinate null halves; alpha must be supported on even subsets of U.
CliffordElem spin_action(const RatVec& v, const CliffordElem& alpha,
                         const MatRat& Q);

struct CliffordModuleData {
    RatVec v;                          // the II-generic vector
    std::vector<RatVec> ann_basis;     // annihilator of v in N^* (dim 1)
    std::vector<RatVec> psing_basis;   // singloc(Ann(v)) = SA(v)
    std::vector<RatVec> ker_iiv;       // ker II_v, contained in SA(v)
    MatRat qv;                         // induced form on ker II_v
    std::vector<MatRat> module_maps;   // endomorphisms of T / SA(v)
    std::size_t module_dim = 0;        // dim T / SA(v)
};

// Builds the Clifford module carried by a quadric system with a critical
// tangential defect: the flag, the induced form Q_v, and one endomorphism of
// T/SA(v) per basis vector of ker II_v, whose anticommutators are verified
// exactly against -2 Q_v before returning.
CliffordModuleData clifford_module_from_II(const QuadricSystem& A, Rng& rng);

}  // namespace pdgeo

#endif  // PDGEO_CLIFFORD_HPP
