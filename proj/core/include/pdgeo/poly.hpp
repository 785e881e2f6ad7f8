#ifndef PDGEO_POLY_HPP
#define PDGEO_POLY_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "pdgeo/matrix.hpp"
#include "pdgeo/rational.hpp"

namespace pdgeo {

using Expo = std::vector<unsigned>;  // exponent vector, length = nvars

// Multivariate polynomial over the rationals. Terms are kept in a sorted map
// keyed by exponent vector; zero coefficients are never stored.
class MPoly {
public:
    MPoly() : nvars_(0) {}
    explicit MPoly(std::size_t nvars) : nvars_(nvars) {}

    static MPoly constant(std::size_t nvars, const Rat& c);
    static MPoly variable(std::size_t nvars, std::size_t index);
    static MPoly monomial(std::size_t nvars, const Expo& e, const Rat& c);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    unsigned degree() const;  // max total degree, 0 for the zero polynomial

    const std::map<Expo, Rat>& terms() const { return terms_; }
    Rat coeff(const Expo& e) const;
    Rat constant_term() const;

    void add_term(const Expo& e, const Rat& c);

    MPoly operator+(const MPoly& rhs) const;
    MPoly operator-(const MPoly& rhs) const;
    MPoly operator-() const;
    MPoly operator*(const MPoly& rhs) const;
    MPoly operator*(const Rat& c) const;
    bool operator==(const MPoly& rhs) const {
        return nvars_ == rhs.nvars_ && terms_ == rhs.terms_;
    }

    MPoly derivative(std::size_t var) const;

    Rat eval(const RatVec& point) const;

    // Substitute each variable by the corresponding polynomial.
    MPoly substitute(const std::vector<MPoly>& values) const;

    // x_i -> x_i + shift_i; used to recenter charts.
    MPoly shifted(const RatVec& shift) const;

    // Drop every term of total degree > bound.
    MPoly truncated(unsigned bound) const;

    std::string to_string() const;

private:
    std::size_t nvars_;
    std::map<Expo, Rat> terms_;
};

using PolyVec = std::vector<MPoly>;

MPoly det_poly(const std::vector<std::vector<MPoly>>& m);

// Evaluate a polynomial matrix at a rational point.
MatRat eval_matrix(const std::vector<std::vector<MPoly>>& m, const RatVec& point);

// For a wide polynomial matrix (rows < cols): one signed-maximal-minor kernel
// vector per choice of rows+1 columns. Each output annihilates the matrix as a
// polynomial identity, and at any point of full row rank the outputs span the
// kernel. `column_sets`, when given, restricts the enumerated choices.
std::vector<PolyVec> cramer_kernel_vectors(
    const std::vector<std::vector<MPoly>>& m,
    const std::vector<std::vector<std::size_t>>* column_sets = nullptr);

}  // namespace pdgeo

#endif  // PDGEO_POLY_HPP
