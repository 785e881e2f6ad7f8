#include "pdgeo/matrix.hpp"

#include <algorithm>
#include <cassert>

namespace pdgeo {

MatRat MatRat::from_rows(const std::vector<RatVec>& rows) {
    if (rows.empty()) return MatRat(0, 0);
    MatRat m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        assert(rows[i].size() == m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

RatVec MatRat::row(std::size_t i) const {
    RatVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
}

RatVec MatRat::col(std::size_t j) const {
    RatVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

MatRat MatRat::transpose() const {
    MatRat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

MatRat MatRat::operator*(const MatRat& rhs) const {
    assert(cols_ == rhs.rows_);
    MatRat p(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat& a = (*this)(i, k);
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                if (sgn(rhs(k, j)) != 0) p(i, j) += a * rhs(k, j);
            }
        }
    return p;
}

MatRat MatRat::operator+(const MatRat& rhs) const {
    assert(rows_ == rhs.rows_ && cols_ == rhs.cols_);
    MatRat s(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] + rhs.data_[i];
    return s;
}

MatRat MatRat::operator-(const MatRat& rhs) const {
    assert(rows_ == rhs.rows_ && cols_ == rhs.cols_);
    MatRat s(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] - rhs.data_[i];
    return s;
}

MatRat MatRat::scaled(const Rat& c) const {
    MatRat s(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) s.data_[i] = data_[i] * c;
    return s;
}

RatVec MatRat::apply(const RatVec& v) const {
    assert(v.size() == cols_);
    RatVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Rat acc = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            if (sgn((*this)(i, j)) != 0) acc += (*this)(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

bool MatRat::is_zero() const {
    for (const auto& q : data_)
        if (sgn(q) != 0) return false;
    return true;
}

bool MatRat::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool MatRat::is_skew() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            if ((*this)(i, j) != -(*this)(j, i)) return false;
    return true;
}

MatRat MatRat::stacked(const MatRat& other) const {
    if (rows_ == 0) return other;
    if (other.rows_ == 0) return *this;
    assert(cols_ == other.cols_);
    MatRat s(rows_ + other.rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < other.rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) s(rows_ + i, j) = other(i, j);
    return s;
}

namespace {

// Denominator-cleared integer copy; row scaling does not change the rank.
std::vector<std::vector<Int>> to_integer_rows(const MatRat& m) {
    std::vector<std::vector<Int>> rows(m.rows(), std::vector<Int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int lcm = 1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
                    m(i, j).get_den_mpz_t());
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Rat scaled = m(i, j) * Rat(lcm);
            rows[i][j] = scaled.get_num();  // denominator is 1 after scaling
        }
    }
    return rows;
}

}  // namespace

std::size_t rank_exact(const MatRat& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    auto a = to_integer_rows(m);
    const std::size_t nr = a.size(), nc = a.front().size();
    std::size_t rank = 0;
    Int prev_pivot = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < nr; ++col) {
        // smallest nonzero pivot keeps intermediate entries modest
        std::size_t best = nr;
        for (std::size_t i = row; i < nr; ++i) {
            if (sgn(a[i][col]) == 0) continue;
            if (best == nr ||
                mpz_cmpabs(a[i][col].get_mpz_t(), a[best][col].get_mpz_t()) < 0)
                best = i;
        }
        if (best == nr) continue;
        std::swap(a[row], a[best]);
        const Int pivot = a[row][col];
        for (std::size_t i = row + 1; i < nr; ++i) {
            const Int factor = a[i][col];
            for (std::size_t j = col; j < nc; ++j) {
                Int t = a[i][j] * pivot - factor * a[row][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(),
                             prev_pivot.get_mpz_t());
            }
        }
        prev_pivot = pivot;
        ++row;
        ++rank;
    }
    return rank;
}

MatRat rref(const MatRat& m, std::vector<std::size_t>* pivots) {
    MatRat a = m;
    const std::size_t nr = a.rows(), nc = a.cols();
    if (pivots) pivots->clear();
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < nr; ++col) {
        std::size_t best = nr;
        std::size_t best_bits = 0;
        for (std::size_t i = row; i < nr; ++i) {
            if (sgn(a(i, col)) == 0) continue;
            std::size_t bits = rat_bits(a(i, col));
            if (best == nr || bits < best_bits) {
                best = i;
                best_bits = bits;
            }
        }
        if (best == nr) continue;
        if (best != row)
            for (std::size_t j = 0; j < nc; ++j) std::swap(a(row, j), a(best, j));
        const Rat inv = 1 / a(row, col);
        for (std::size_t j = col; j < nc; ++j) a(row, j) *= inv;
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == row || sgn(a(i, col)) == 0) continue;
            const Rat f = a(i, col);
            for (std::size_t j = col; j < nc; ++j) a(i, j) -= f * a(row, j);
        }
        if (pivots) pivots->push_back(col);
        ++row;
    }
    return a;
}

std::vector<RatVec> kernel_basis(const MatRat& m) {
    const std::size_t nc = m.cols();
    if (nc == 0) return {};
    if (m.rows() == 0) {
        std::vector<RatVec> basis;
        for (std::size_t j = 0; j < nc; ++j) {
            RatVec v(nc);
            v[j] = 1;
            basis.push_back(v);
        }
        return basis;
    }
    std::vector<std::size_t> pivots;
    MatRat r = rref(m, &pivots);
    std::vector<bool> is_pivot(nc, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RatVec> basis;
    for (std::size_t j = 0; j < nc; ++j) {
        if (is_pivot[j]) continue;
        RatVec v(nc);
        v[j] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, j);
        basis.push_back(v);
    }
    return basis;
}

bool solve_linear(const MatRat& m, const RatVec& b, RatVec& x) {
    assert(b.size() == m.rows());
    MatRat aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    std::vector<std::size_t> pivots;
    MatRat r = rref(aug, &pivots);
    for (auto p : pivots)
        if (p == m.cols()) return false;  // pivot in the constant column
    x.assign(m.cols(), Rat(0));
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = r(k, m.cols());
    return true;
}

Rat det_exact(const MatRat& m) {
    assert(m.rows() == m.cols());
    const std::size_t n = m.rows();
    if (n == 0) return Rat(1);
    auto a = to_integer_rows(m);
    // track the row scalings applied by to_integer_rows
    Rat scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Int lcm = 1;
        for (std::size_t j = 0; j < n; ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), m(i, j).get_den_mpz_t());
        scale *= Rat(lcm);
    }
    Int prev_pivot = 1;
    int sign = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = n;
        for (std::size_t i = col; i < n; ++i) {
            if (sgn(a[i][col]) == 0) continue;
            if (best == n ||
                mpz_cmpabs(a[i][col].get_mpz_t(), a[best][col].get_mpz_t()) < 0)
                best = i;
        }
        if (best == n) return Rat(0);
        if (best != col) {
            std::swap(a[col], a[best]);
            sign = -sign;
        }
        const Int pivot = a[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            const Int factor = a[i][col];
            for (std::size_t j = col; j < n; ++j) {
                Int t = a[i][j] * pivot - factor * a[col][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(),
                             prev_pivot.get_mpz_t());
            }
        }
        prev_pivot = pivot;
    }
    Rat d(a[n - 1][n - 1]);
    if (sign < 0) d = -d;
    return d / scale;
}

std::size_t rank_of_span(const std::vector<RatVec>& vectors) {
    if (vectors.empty()) return 0;
    return rank_exact(MatRat::from_rows(vectors));
}

bool in_span(const std::vector<RatVec>& span, const RatVec& v) {
    bool v_zero = true;
    for (const auto& q : v)
        if (sgn(q) != 0) {
            v_zero = false;
            break;
        }
    if (v_zero) return true;
    if (span.empty()) return false;
    auto extended = span;
    extended.push_back(v);
    return rank_of_span(span) == rank_of_span(extended);
}

RatVec vec_sub(const RatVec& a, const RatVec& b) {
    assert(a.size() == b.size());
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

RatVec vec_scaled(const RatVec& a, const Rat& c) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

Rat dot(const RatVec& a, const RatVec& b) {
    assert(a.size() == b.size());
    Rat acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) acc += a[i] * b[i];
    return acc;
}

}  // namespace pdgeo
