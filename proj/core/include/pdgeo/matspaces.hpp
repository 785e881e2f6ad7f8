#ifndef PDGEO_MATSPACES_HPP
#define PDGEO_MATSPACES_HPP

#include <optional>
#include <string>
#include <vector>

#include "pdgeo/matrix.hpp"
#include "pdgeo/rng.hpp"

namespace pdgeo {

enum class Symmetry { general, symmetric, skew };

// Linear space of matrices spanned by `basis`, one matrix per parameter.
struct MatrixSpace {
    std::size_t rows = 0, cols = 0;
    Symmetry symmetry = Symmetry::general;
    std::vector<MatRat> basis;
    std::string name;

    std::size_t dim() const { return basis.size(); }
    MatRat at(const RatVec& params) const;
    // symmetry tag consistent with every basis matrix; basis independent
    void validate() const;
};

// Transcriptions of the named coordinate examples (B linear, C skew,
// A symmetric); A_IV is the block doubling of C_IV.
MatrixSpace exemplar(const std::string& name);

// Block doubling [[0, B], [t(B), 0]] (symmetric) or [[0, B], [-t(B), 0]]
// (skew); rank doubles at every parameter point.
MatrixSpace doubled(const MatrixSpace& B, Symmetry kind);

// Symmetric doubling of a random (m-r+1)-dimensional space of
// (r/2) x (m - r/2) matrices; certified constant rank r before returning.
MatrixSpace split_type(std::size_t r, std::size_t m, Rng& rng);

// Wedge multiplication v -> (E -> v ^ E): Lambda^k V -> Lambda^{k+1} V for
// each coordinate vector of V = C^m. When m = 2k+1 the volume form
// identification makes the maps symmetric (k even) or skew (k odd).
MatrixSpace graded_algebra_space(std::size_t m, std::size_t k);

struct RankCertificate {
    std::size_t claimed_rank = 0;
    std::string mode;          // "randomized" or "symbolic"
    bool certified = false;
    RatVec witness;            // parameters achieving the claimed rank
    int trials = 0;
    double log2_failure_bound = 0.0;  // randomized mode
    bool minors_vanish_identically = false;  // symbolic mode
    // refutation data when not certified
    std::optional<RatVec> refutation_point;
    std::size_t refutation_rank = 0;
    std::string note;
};

// Randomized: rank at `trials` random parameter points must equal r, plus a
// Schwartz-Zippel failure bound from the minor degree; a pencil gcd probe
// searches for rank drops. Symbolic: expands every (r+1)-minor and verifies
// identical vanishing (refused over the minor budget).
RankCertificate certify_constant_rank(const MatrixSpace& S, std::size_t r,
                                      const std::string& mode, Rng& rng,
                                      int trials = 20,
                                      std::size_t minor_budget = 100000);

// Exact drop detection for the pencil span{M0, M1}, all of whose elements
// have rank <= r with the generic rank r: a common projective root of the
// r-minors (gcd degree >= 1) witnesses a rank drop over the closure.
struct PencilDrop {
    bool drops = false;
    std::optional<RatVec> rational_point;  // (c0, c1) with rank < r if found
    std::size_t rational_rank = 0;
    unsigned gcd_degree = 0;  // of the common factor of the r-minors
};
PencilDrop pencil_rank_drop(const MatRat& M0, const MatRat& M1, std::size_t r);

struct OddRankTrial {
    bool refuted = false;
    bool rational_witness = false;
    RatVec witness;  // (c0, c1)
    unsigned gcd_degree = 0;
};

struct OddRankReport {
    std::size_t m = 0, r = 0;
    int trials = 0;
    int refuted = 0;
    std::vector<OddRankTrial> details;
    bool constant_rank_space_found = false;
};

// For random 2-dimensional symmetric spaces of generic rank r (odd), exhibit
// a parameter point (or algebraic locus) of different rank.
OddRankReport odd_rank_obstruction(std::size_t m, std::size_t r, int trials,
                                   Rng& rng);

// Signed-permutation equivalence search between two square matrix spaces
// (simultaneous row/column signed permutation plus a signed relabelling of
// the parameters). Returns true when a correspondence exists.
bool equivalent_by_signed_permutation(const MatrixSpace& A,
                                      const MatrixSpace& B);

// Doubling-structure matcher: does A coincide with doubled(B, kind) up to
// signed permutation?
bool matches_doubling(const MatrixSpace& A, const MatrixSpace& B,
                      Symmetry kind);

MatrixSpace parse_matspace_spec(const std::string& spec, Rng& rng);

}  // namespace pdgeo

#endif  // PDGEO_MATSPACES_HPP
