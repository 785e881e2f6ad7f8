#ifndef PDGEO_MATRIX_HPP
#define PDGEO_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "pdgeo/rational.hpp"

namespace pdgeo {

using RatVec = std::vector<Rat>;

// Dense matrix of exact rationals.
class MatRat {
public:
    MatRat() : rows_(0), cols_(0) {}
    MatRat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static MatRat identity(std::size_t n) {
        MatRat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static MatRat from_rows(const std::vector<RatVec>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    RatVec row(std::size_t i) const;
    RatVec col(std::size_t j) const;

    MatRat transpose() const;
    MatRat operator*(const MatRat& rhs) const;
    MatRat operator+(const MatRat& rhs) const;
    MatRat operator-(const MatRat& rhs) const;
    MatRat scaled(const Rat& c) const;
    RatVec apply(const RatVec& v) const;  // m * v

    bool operator==(const MatRat& rhs) const {
        return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
    }
    bool is_zero() const;
    bool is_symmetric() const;
    bool is_skew() const;

    // Rows of `other` appended below.
    MatRat stacked(const MatRat& other) const;

private:
    std::size_t rows_, cols_;
    std::vector<Rat> data_;
};

// Rank over the rationals by fraction-free (Bareiss) elimination on a
// denominator-cleared integer copy. Deterministic.
std::size_t rank_exact(const MatRat& m);

// Basis of the right kernel { v : m v = 0 }, exact. Size = cols - rank.
std::vector<RatVec> kernel_basis(const MatRat& m);

// Reduced row echelon form; returns pivot column indices.
MatRat rref(const MatRat& m, std::vector<std::size_t>* pivots = nullptr);

// One exact solution of m x = b, or false if inconsistent.
bool solve_linear(const MatRat& m, const RatVec& b, RatVec& x);

// Determinant (square), fraction-free.
Rat det_exact(const MatRat& m);

// rank of the span of a set of vectors
std::size_t rank_of_span(const std::vector<RatVec>& vectors);

// True if v lies in the span of the given vectors.
bool in_span(const std::vector<RatVec>& span, const RatVec& v);

RatVec vec_sub(const RatVec& a, const RatVec& b);
RatVec vec_scaled(const RatVec& a, const Rat& c);
Rat dot(const RatVec& a, const RatVec& b);

}  // namespace pdgeo

#endif  // PDGEO_MATRIX_HPP
