#ifndef PDGEO_OSC_HPP
#define PDGEO_OSC_HPP

#include <string>
#include <vector>

#include "pdgeo/catalog.hpp"
#include "pdgeo/jets.hpp"
#include "pdgeo/rng.hpp"

namespace pdgeo {

// Space of degree-d forms on the ambient space osculating X to a given order
// at a point: exact kernel of the Taylor-coefficient conditions. Dimensions
// are affine (dimension of the linear space of forms, not projectivized).
struct OscReport {
    unsigned degree = 0;
    unsigned order = 0;
    std::size_t form_space_dim = 0;  // ambient: C(N + d, d)
    std::size_t dimension = 0;       // affine dimension of the solution space
    std::vector<RatVec> basis;       // coefficient vectors over the monomials
    std::vector<Expo> monomials;     // degree-d exponents on C^{N+1}
};

OscReport osculating_space(const ParamVariety& X, const RatVec& point,
                           unsigned d, unsigned p_ord, bool with_basis = true);

struct SyzygyWitness {
    std::vector<RatVec> linear_forms;  // independent covectors on T
    std::vector<MatRat> quadrics;      // independent quadrics, same count
};

struct SyzygyReport {
    std::size_t system_dim = 0;  // dimension of the span of the system
    std::size_t syzygy_dim = 0;  // dim ker of the symmetrization on T^* ox A
    bool has_witness = false;
    SyzygyWitness witness;       // reduced to independent pairs
    bool rank_bound_ok = true;   // every quadric in the witness span has
                                 // rank <= 2 (pairs - 1)
};

SyzygyReport linear_syzygies(const QuadricSystem& A, Rng* rng = nullptr);

struct MongeSolution {
    bool preconditions_ok = false;   // vanishing third form and no syzygies
    std::size_t syzygy_dim = 0;
    bool solvable3 = false, solvable4 = false, solvable5 = false;
    std::string verdict;             // holds | fails-at-order-k |
                                     // precondition-failed
    std::size_t osc3_dim = 0;        // affine dims of the osculating quadrics
    std::size_t osc4_dim = 0;
    // a solution of the joint system, when solvable: the triangular quadrics
    // in the adapted ambient coordinates (for substitution checks)
    std::vector<RatVec> quadric_coeffs;
    std::vector<Expo> quadric_monomials;
    // data to evaluate adapted coordinates of points of X
    MatRat frame_inv;
    RatVec center;
};

MongeSolution monge_check(const ParamVariety& X, const RatVec& point,
                          Rng& rng);

// Exact residuals of the recovered quadrics at sample chart points.
bool monge_quadrics_vanish_on_samples(const ParamVariety& X,
                                      const MongeSolution& sol, Rng& rng,
                                      int samples = 20, long height = 7);

// Largest k <= maxk such that every F_j(v, .., v) vanishes for 2 <= j <= k.
unsigned line_osculation_order(const ParamVariety& X, const RatVec& point,
                               const RatVec& v, unsigned maxk);

enum class Containment { contained, not_contained, undecidable };

// Containment of the tangent line against the stabilized space of quadric
// equations; a definite verdict is only available for quadric-cut charts.
Containment line_contained(const ParamVariety& X, const RatVec& point,
                           const RatVec& v);

struct RankLevel {
    unsigned level = 0;           // j
    std::size_t incremental = 0;  // new rank contributed at this level
    std::size_t expected = 0;     // a C(k+j-1, j), capped by the target
    bool maximal = false;
};

struct MaximalRankReport {
    bool base_condition_ok = false;  // L inside the vanishing conditions
    std::vector<RankLevel> levels;   // j = 2 .. m-1
    bool inequality_holds = false;   // a [C(k+m-1, m-1) - k - 1] >= k (n - k)
    std::size_t plane_dim = 0;       // k
};

MaximalRankReport maximal_rank_report(const ParamVariety& X,
                                      const RatVec& point,
                                      const std::vector<RatVec>& plane,
                                      unsigned m);

}  // namespace pdgeo

#endif  // PDGEO_OSC_HPP
