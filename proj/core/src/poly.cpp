#include "pdgeo/poly.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

#include "pdgeo/error.hpp"

namespace pdgeo {

MPoly MPoly::constant(std::size_t nvars, const Rat& c) {
    MPoly p(nvars);
    if (sgn(c) != 0) p.terms_[Expo(nvars, 0)] = c;
    return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t index) {
    assert(index < nvars);
    MPoly p(nvars);
    Expo e(nvars, 0);
    e[index] = 1;
    p.terms_[e] = 1;
    return p;
}

MPoly MPoly::monomial(std::size_t nvars, const Expo& e, const Rat& c) {
    assert(e.size() == nvars);
    MPoly p(nvars);
    if (sgn(c) != 0) p.terms_[e] = c;
    return p;
}

unsigned MPoly::degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
    return d;
}

Rat MPoly::coeff(const Expo& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

Rat MPoly::constant_term() const { return coeff(Expo(nvars_, 0)); }

void MPoly::add_term(const Expo& e, const Rat& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

MPoly MPoly::operator+(const MPoly& rhs) const {
    assert(nvars_ == rhs.nvars_);
    MPoly p = *this;
    for (const auto& [e, c] : rhs.terms_) p.add_term(e, c);
    return p;
}

MPoly MPoly::operator-(const MPoly& rhs) const {
    assert(nvars_ == rhs.nvars_);
    MPoly p = *this;
    for (const auto& [e, c] : rhs.terms_) p.add_term(e, -c);
    return p;
}

MPoly MPoly::operator-() const {
    MPoly p(nvars_);
    for (const auto& [e, c] : terms_) p.terms_[e] = -c;
    return p;
}

MPoly MPoly::operator*(const MPoly& rhs) const {
    assert(nvars_ == rhs.nvars_);
    MPoly p(nvars_);
    Expo e(nvars_);
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
            p.add_term(e, ca * cb);
        }
    }
    return p;
}

MPoly MPoly::operator*(const Rat& c) const {
    MPoly p(nvars_);
    if (sgn(c) == 0) return p;
    for (const auto& [e, t] : terms_) p.terms_[e] = t * c;
    return p;
}

MPoly MPoly::derivative(std::size_t var) const {
    assert(var < nvars_);
    MPoly p(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Expo d = e;
        d[var] -= 1;
        p.add_term(d, c * Rat(static_cast<long>(e[var])));
    }
    return p;
}

Rat MPoly::eval(const RatVec& point) const {
    assert(point.size() == nvars_);
    // memoize powers of each coordinate
    std::vector<std::vector<Rat>> powers(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) powers[i].push_back(Rat(1));
    Rat acc = 0;
    for (const auto& [e, c] : terms_) {
        Rat term = c;
        for (std::size_t i = 0; i < nvars_; ++i) {
            while (powers[i].size() <= e[i])
                powers[i].push_back(powers[i].back() * point[i]);
            if (e[i] != 0) term *= powers[i][e[i]];
        }
        acc += term;
    }
    return acc;
}

MPoly MPoly::substitute(const std::vector<MPoly>& values) const {
    assert(values.size() == nvars_);
    const std::size_t out_vars = values.empty() ? 0 : values.front().nvars();
    MPoly acc(out_vars);
    std::vector<std::vector<MPoly>> powers(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i)
        powers[i].push_back(MPoly::constant(out_vars, 1));
    for (const auto& [e, c] : terms_) {
        MPoly term = MPoly::constant(out_vars, c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            while (powers[i].size() <= e[i])
                powers[i].push_back(powers[i].back() * values[i]);
            if (e[i] != 0) term = term * powers[i][e[i]];
        }
        acc = acc + term;
    }
    return acc;
}

MPoly MPoly::shifted(const RatVec& shift) const {
    assert(shift.size() == nvars_);
    std::vector<MPoly> values;
    values.reserve(nvars_);
    for (std::size_t i = 0; i < nvars_; ++i) {
        MPoly v = MPoly::variable(nvars_, i);
        values.push_back(v + MPoly::constant(nvars_, shift[i]));
    }
    return substitute(values);
}

MPoly MPoly::truncated(unsigned bound) const {
    MPoly p(nvars_);
    for (const auto& [e, c] : terms_) {
        if (std::accumulate(e.begin(), e.end(), 0u) <= bound) p.terms_[e] = c;
    }
    return p;
}

std::string MPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << pdgeo::to_string(c);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (e[i] == 0) continue;
            out << "*x" << i;
            if (e[i] > 1) out << "^" << e[i];
        }
    }
    return out.str();
}

MPoly det_poly(const std::vector<std::vector<MPoly>>& m) {
    const std::size_t n = m.size();
    if (n == 0) throw Error("exact", "det_poly", "empty matrix");
    const std::size_t nvars = m[0][0].nvars();
    if (n == 1) return m[0][0];
    // Laplace expansion along the first column, memoizing on row subsets would
    // be overkill at the sizes used here.
    MPoly acc(nvars);
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i][0].is_zero()) continue;
        std::vector<std::vector<MPoly>> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == i) continue;
            std::vector<MPoly> row(m[r].begin() + 1, m[r].end());
            minor.push_back(std::move(row));
        }
        MPoly contrib = m[i][0] * det_poly(minor);
        if (i % 2 == 0)
            acc = acc + contrib;
        else
            acc = acc - contrib;
    }
    return acc;
}

MatRat eval_matrix(const std::vector<std::vector<MPoly>>& m, const RatVec& point) {
    if (m.empty()) return MatRat(0, 0);
    MatRat out(m.size(), m.front().size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j)
            out(i, j) = m[i][j].eval(point);
    return out;
}

namespace {

void enumerate_subsets(std::size_t n, std::size_t k,
                       std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        out.push_back(cur);
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
}

}  // namespace

std::vector<PolyVec> cramer_kernel_vectors(
    const std::vector<std::vector<MPoly>>& m,
    const std::vector<std::vector<std::size_t>>* column_sets) {
    const std::size_t rows = m.size();
    if (rows == 0) throw Error("exact", "cramer_kernel_vectors", "empty matrix");
    const std::size_t cols = m.front().size();
    const std::size_t nvars = m[0][0].nvars();
    if (cols <= rows)
        throw Error("exact", "cramer_kernel_vectors",
                    "matrix must have more columns than rows");

    std::vector<std::vector<std::size_t>> sets;
    if (column_sets == nullptr) {
        enumerate_subsets(cols, rows + 1, sets);
        column_sets = &sets;
    }

    std::vector<PolyVec> out;
    out.reserve(column_sets->size());
    for (const auto& set : *column_sets) {
        assert(set.size() == rows + 1);
        PolyVec v(cols, MPoly(nvars));
        // v[set[k]] = (-1)^k * det(columns set minus set[k])
        for (std::size_t k = 0; k < set.size(); ++k) {
            std::vector<std::vector<MPoly>> sub(rows);
            for (std::size_t r = 0; r < rows; ++r) {
                sub[r].reserve(rows);
                for (std::size_t c = 0; c < set.size(); ++c) {
                    if (c == k) continue;
                    sub[r].push_back(m[r][set[c]]);
                }
            }
            MPoly minor = det_poly(sub);
            v[set[k]] = (k % 2 == 0) ? minor : -minor;
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace pdgeo
