#ifndef PDGEO_SERIES_HPP
#define PDGEO_SERIES_HPP

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "pdgeo/poly.hpp"
#include "pdgeo/rational.hpp"

namespace pdgeo {

// Monomial index for the dense series representation: all exponent vectors in
// `nvars` variables of total degree <= order, graded-lexicographic.
class MonomialTable {
public:
    MonomialTable(std::size_t nvars, unsigned order);

    std::size_t nvars() const { return nvars_; }
    unsigned order() const { return order_; }
    std::size_t size() const { return exponents_.size(); }

    const Expo& exponent(std::size_t idx) const { return exponents_[idx]; }
    unsigned degree(std::size_t idx) const { return degrees_[idx]; }
    std::size_t index(const Expo& e) const;        // must exist
    std::size_t product_index(std::size_t a, std::size_t b) const;

    // first index of each degree; degree d occupies [offset[d], offset[d+1])
    std::size_t degree_offset(unsigned d) const { return offsets_[d]; }

    static std::shared_ptr<const MonomialTable> get(std::size_t nvars,
                                                    unsigned order);

private:
    std::uint64_t key(const Expo& e) const;

    std::size_t nvars_;
    unsigned order_;
    unsigned bits_per_var_;
    std::vector<Expo> exponents_;
    std::vector<unsigned> degrees_;
    std::vector<std::size_t> offsets_;
    std::unordered_map<std::uint64_t, std::size_t> lookup_;
};

// Truncated multivariate power series: exact coefficients up to a total
// degree bound, arithmetic closed under truncation.
class TruncSeries {
public:
    TruncSeries() = default;
    explicit TruncSeries(std::shared_ptr<const MonomialTable> table)
        : table_(std::move(table)), coeffs_(table_->size()) {}

    static TruncSeries from_poly(const MPoly& p,
                                 std::shared_ptr<const MonomialTable> table);
    static TruncSeries variable(std::shared_ptr<const MonomialTable> table,
                                std::size_t var);
    static TruncSeries constant(std::shared_ptr<const MonomialTable> table,
                                const Rat& c);

    const std::shared_ptr<const MonomialTable>& table() const { return table_; }
    std::size_t nvars() const { return table_->nvars(); }
    unsigned order() const { return table_->order(); }

    const Rat& coeff(std::size_t idx) const { return coeffs_[idx]; }
    Rat& coeff(std::size_t idx) { return coeffs_[idx]; }
    Rat coeff(const Expo& e) const;
    Rat constant_term() const { return coeffs_.empty() ? Rat(0) : coeffs_[0]; }
    bool is_zero() const;

    TruncSeries operator+(const TruncSeries& rhs) const;
    TruncSeries operator-(const TruncSeries& rhs) const;
    TruncSeries operator*(const TruncSeries& rhs) const;
    TruncSeries operator*(const Rat& c) const;

    // Multiplication keeping only terms of total degree <= bound.
    TruncSeries mul_bounded(const TruncSeries& rhs, unsigned bound) const;

    // Multiplicative inverse; requires nonzero constant term.
    TruncSeries reciprocal() const;

    MPoly to_poly() const;
    // Homogeneous part of given degree, as a polynomial.
    MPoly homogeneous_part(unsigned d) const;

private:
    std::shared_ptr<const MonomialTable> table_;
    std::vector<Rat> coeffs_;
};

// Substitute the tuple `values` (one series per variable of f) into f.
// All values must share a table; composition is truncated at that order.
TruncSeries compose(const TruncSeries& f, const std::vector<TruncSeries>& values);

// Compositional inverse of a map f: C^n -> C^n with zero constant term and
// invertible linear part: returns g with f(g(x)) = x through the truncation
// order. Throws Error("exact", "series_invert_map", "non-invertible jet") when
// the linear part is singular.
std::vector<TruncSeries> series_invert_map(const std::vector<TruncSeries>& f);

}  // namespace pdgeo

#endif  // PDGEO_SERIES_HPP
