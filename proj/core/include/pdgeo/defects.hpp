#ifndef PDGEO_DEFECTS_HPP
#define PDGEO_DEFECTS_HPP

#include <cstdint>
#include <string>

#include "pdgeo/catalog.hpp"
#include "pdgeo/jets.hpp"
#include "pdgeo/rng.hpp"

namespace pdgeo {

// Projective dimension of the k-th secant variety via the span of tangent
// spaces at k random general points (Terracini); maximum over retries.
std::size_t secant_dim(const ParamVariety& X, std::size_t k, Rng& rng,
                       int retries = 3, long height = 7);

// Projective dimension of the join of two varieties in the same ambient space.
std::size_t join_dim(const ParamVariety& Y, const ParamVariety& Z, Rng& rng,
                     int retries = 3, long height = 7);

struct TangentialDim {
    std::size_t by_second_ff = 0;   // n + dim II_v(T) for a II-generic v
    std::size_t by_jacobian = 0;    // rank of the explicit tangent-sweep map
    std::size_t dim() const { return by_second_ff; }
};

// Both computations must agree; disagreement raises a genericity error.
TangentialDim tangential_dim(const ParamVariety& X, Rng& rng,
                             int retries = 3, long height = 7);

struct DualDim {
    std::size_t by_rank = 0;      // n + a - 1 - (n - generic rank of |II|)
    std::size_t by_conormal = 0;  // Jacobian rank of the conormal sweep
    std::size_t delta_star = 0;
    std::size_t dim() const { return by_rank; }
};

// Both computations must agree; pre: X expected smooth (rank method).
DualDim dual_dim(const ParamVariety& X, Rng& rng, int retries = 3,
                 long height = 7);

// Fiber dimension of the Gauss map: dim singloc |II| at a general point,
// cross-checked against the rank of the wedge-coordinate Gauss map.
std::size_t gauss_defect(const ParamVariety& X, Rng& rng, long height = 7);

// Second fundamental form of the dual variety at a general tangent hyperplane,
// assembled from the order-3 jets of X by the inversion formula. The system
// consists of 1 + delta_star quadrics on an (a - 1 + rank)-dimensional space.
QuadricSystem dual_second_ff(const ParamVariety& X, const RatVec& point,
                             Rng& rng);

struct DefectChecks {
    bool zak_linear_normality = true;  // a < n/2 + 2 forces sigma to fill
    bool dual_bound = true;            // delta_* <= a - 1
    bool landman_parity = true;        // n - delta_* even
    bool superadditivity = true;       // dim sigma_k <= n + (k-1)(n+1-d_sigma)
};

struct DefectReport {
    std::string variety;
    std::size_t n = 0, N = 0;
    std::size_t secant_k = 2;
    std::size_t secant_dimension = 0, secant_defect = 0;
    std::size_t tangential_dimension = 0, tangential_defect = 0;
    std::size_t dual_dimension = 0, dual_defect = 0;
    std::size_t gauss_fiber_dim = 0;
    DefectChecks checks;
    std::uint64_t seed = 0;
};

DefectReport defect_report(const ParamVariety& X, std::size_t k,
                           std::uint64_t seed, int retries = 3,
                           long height = 7);

}  // namespace pdgeo

#endif  // PDGEO_DEFECTS_HPP
