#ifndef PDGEO_CATALOG_HPP
#define PDGEO_CATALOG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pdgeo/poly.hpp"
#include "pdgeo/rng.hpp"

namespace pdgeo {

// Polynomial parametrization of an affine chart of a projective variety
// X^n in P^N. The homogeneous lift of the chart is [1 : chart].
struct ParamVariety {
    std::string name;
    std::size_t source_dim = 0;      // n
    std::size_t ambient_dim = 0;     // N, so codimension a = N - n
    PolyVec chart;                   // length N, polynomials in n variables
    unsigned max_degree = 0;
    bool expected_smooth = true;
    bool quadric_cut = false;        // cut out by quadrics (known catalog fact)

    std::size_t codim() const { return ambient_dim - source_dim; }

    // Value of the homogeneous lift (1, chart(x)) in C^{N+1}.
    RatVec lift_at(const RatVec& point) const;
    // Rows: lift and its n partial derivatives, evaluated at `point`;
    // spans the affine tangent space when the Jacobian has full rank.
    MatRat tangent_frame_at(const RatVec& point) const;
    // Jacobian of the chart (no lift), N x n, evaluated at `point`.
    MatRat jacobian_at(const RatVec& point) const;

    bool point_is_general(const RatVec& point) const;
    // Random chart point where the Jacobian has full rank n.
    RatVec general_point(Rng& rng, long height = 5, int retries = 40) const;

    // Generic rank of the chart Jacobian over several samples.
    std::size_t generic_jacobian_rank(Rng& rng, int samples = 10,
                                      long height = 5) const;
};

// Complexified composition algebra of dimension 1, 2, 4 or 8 obtained by
// Cayley-Dickson doubling; basis unit 0 is the identity.
struct CompAlgebra {
    std::size_t dim = 1;
    // mul[i][j] = structure-constant vector of e_i * e_j
    std::vector<std::vector<RatVec>> mul;

    RatVec multiply(const RatVec& u, const RatVec& v) const;
    RatVec conjugate(const RatVec& u) const;

    // Product of two vectors with polynomial entries (for identity checks).
    PolyVec multiply_poly(const PolyVec& u, const PolyVec& v) const;
    PolyVec conjugate_poly(const PolyVec& u) const;
};

ParamVariety veronese(std::size_t n, unsigned d);
ParamVariety segre(const std::vector<std::size_t>& dims);
ParamVariety grassmannian(std::size_t k, std::size_t m);
ParamVariety spinor_variety(std::size_t m);
CompAlgebra comp_algebra(std::size_t d);
ParamVariety severi(std::size_t d);
ParamVariety graph_variety(std::size_t n, const PolyVec& polys);
ParamVariety tangent_developable(const ParamVariety& curve);
ParamVariety cone_over(const ParamVariety& x);

// A projective point as a 0-dimensional variety (for joins / cones).
ParamVariety point_variety(const RatVec& affine_coords);

// Mini-language: veronese:n,d  segre:d1,d2,...  grassmannian:k,m  spinor:m
// severi:d  tandev:<spec>  cone:<spec>  graph:n;poly;poly;...
ParamVariety parse_variety_spec(const std::string& spec);

}  // namespace pdgeo

#endif  // PDGEO_CATALOG_HPP
