#ifndef PDGEO_JETS_HPP
#define PDGEO_JETS_HPP

#include <string>
#include <vector>

#include "pdgeo/catalog.hpp"
#include "pdgeo/matrix.hpp"
#include "pdgeo/poly.hpp"
#include "pdgeo/rng.hpp"

namespace pdgeo {

// Ordered system of symmetric bilinear forms on a tangent space; houses the
// projective second fundamental form and abstract systems A in S^2 T^*.
struct QuadricSystem {
    std::size_t tangent_dim = 0;
    std::vector<MatRat> quadrics;  // symmetric tangent_dim x tangent_dim
    std::vector<std::string> labels;

    std::size_t size() const { return quadrics.size(); }
    MatRat combination(const RatVec& coeffs) const;
    QuadricSystem subsystem(const std::vector<RatVec>& coeffs,
                            const std::string& label_prefix) const;
};

// Adapted-frame Taylor tower of a chart at a general point: the graph form
// x^mu = f^mu(x^alpha) split into homogeneous pieces, with the osculating
// filtration ranks.
struct JetTower {
    std::string variety;
    RatVec base_point;
    unsigned order = 2;
    std::size_t tangent_dim = 0;  // n
    std::size_t normal_dim = 0;   // a

    // parts[mu][k] = degree-k homogeneous part of f^mu, 0 <= k <= order
    // (degrees 0 and 1 vanish by construction)
    std::vector<std::vector<MPoly>> parts;

    // inverse of the adapted ambient frame (columns: lift, tangents,
    // normal completion); adapted coordinates of a lift vector w are
    // frame_inv w
    MatRat frame_inv;

    // filtration[k-2] = rank of the k-th fundamental form, k = 2..order
    std::vector<std::size_t> filtration;
    // kernels[k-2] = basis of ker FF^k in N^*, the domain of FF^{k+1}
    std::vector<std::vector<RatVec>> kernels;

    MatRat hessian(std::size_t mu) const;  // q^mu as a symmetric matrix
    QuadricSystem second_ff() const;

    // Exact value of the order-k symmetric coefficient tensor of f^mu on the
    // given k tangent arguments (full polarization of the homogeneous part).
    Rat tensor(std::size_t mu, unsigned k, const std::vector<RatVec>& args) const;
    // F_k(v,...,v) for every mu at once.
    RatVec tensor_all(unsigned k, const std::vector<RatVec>& args) const;

    // Basis of the span of the k-th fundamental form inside S^k T^*
    // (polynomials of degree k in the tangent variables).
    std::vector<MPoly> fundamental_form_span(unsigned k) const;
};

// Taylor tower at `point` (general: chart Jacobian of full rank). An optional
// ambient transform (invertible (N+1)x(N+1)) exercises frame independence.
JetTower jet_tower(const ParamVariety& X, const RatVec& point, unsigned order,
                   const MatRat* ambient_change = nullptr);

// Order-2 tower at a random general point.
QuadricSystem second_ff(const ParamVariety& X, Rng& rng, unsigned height = 5);

// Exact intersection of the kernels of all quadrics in A (a linear subspace).
std::vector<RatVec> singloc(const QuadricSystem& A);

// Maximum rank of a random combination over `trials` draws.
std::size_t generic_quadric_rank(const QuadricSystem& A, Rng& rng,
                                 int trials = 20);

// II_v as a map T -> N: row mu is q^mu(v, .).
MatRat ii_v_matrix(const QuadricSystem& A, const RatVec& v);
std::size_t dim_ii_v(const QuadricSystem& A, const RatVec& v);
std::vector<RatVec> kernel_ii_v(const QuadricSystem& A, const RatVec& v);
// Coefficient vectors of the quadrics annihilating v (v in q_sing).
std::vector<RatVec> ann_v(const QuadricSystem& A, const RatVec& v);

// A vector maximizing dim II_v(T) over `samples` random draws (the maximizing
// set is Zariski-open, so sampling finds it).
RatVec ii_generic_vector(const QuadricSystem& A, Rng& rng, int samples = 20,
                         long height = 7);

struct RefinedCubic {
    std::vector<RatVec> ann_basis;      // in N^* coordinates
    std::vector<RatVec> ker_iiv_basis;  // in T
    std::vector<RatVec> sa_basis;       // singloc(Ann(v)) in T
    RatVec f3vvv;                       // F_3(v,v,v) in N coordinates
    std::size_t quotient_dim = 0;       // dim N / II_v(T)
    bool iii_zero = true;               // F_3(v,v,v) in II_v(T)?
};

// Refined third fundamental form data at a II-generic vector v.
RefinedCubic refined_cubic(const ParamVariety& X, const RatVec& point,
                           const RatVec& v, Rng& rng);

// Membership of a cubic in the first prolongation of A: all first partials
// must lie in the span of A.
bool in_prolongation(const QuadricSystem& A, const MPoly& cubic);

// dim A^{(1)} = dim (S^3 T^* intersect A otimes T^*).
std::size_t prolongation_dim(const QuadricSystem& A);

}  // namespace pdgeo

#endif  // PDGEO_JETS_HPP
