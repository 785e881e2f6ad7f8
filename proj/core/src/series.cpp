#include "pdgeo/series.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <numeric>

#include "pdgeo/error.hpp"
#include "pdgeo/matrix.hpp"

namespace pdgeo {

namespace {

void enumerate_graded(std::size_t nvars, unsigned order,
                      std::vector<Expo>& out) {
    out.push_back(Expo(nvars, 0));
    for (unsigned d = 1; d <= order; ++d) {
        // compositions of d into nvars parts, lexicographic
        Expo e(nvars, 0);
        e[0] = d;
        while (true) {
            out.push_back(e);
            std::size_t i = nvars;
            for (std::size_t j = 0; j + 1 < nvars; ++j) {
                std::size_t idx = nvars - 2 - j;
                if (e[idx] > 0) {
                    i = idx;
                    break;
                }
            }
            if (i == nvars || nvars == 1) break;
            unsigned tail = 0;
            for (std::size_t j = i + 1; j < nvars; ++j) {
                tail += e[j];
                e[j] = 0;
            }
            e[i] -= 1;
            e[i + 1] = tail + 1;
        }
    }
}

}  // namespace

MonomialTable::MonomialTable(std::size_t nvars, unsigned order)
    : nvars_(nvars), order_(order) {
    if (nvars == 0) {
        exponents_.push_back(Expo{});
        degrees_.push_back(0);
        offsets_.assign(order + 2, 1);
        offsets_[0] = 0;
        bits_per_var_ = 1;
        lookup_[0] = 0;
        return;
    }
    bits_per_var_ = 4;
    while (bits_per_var_ * nvars > 64) --bits_per_var_;
    if (bits_per_var_ == 0 || (1u << bits_per_var_) <= order)
        throw Error("exact", "series",
                    "unsupported variable count / order combination");
    enumerate_graded(nvars, order, exponents_);
    degrees_.resize(exponents_.size());
    offsets_.assign(order + 2, 0);
    for (std::size_t i = 0; i < exponents_.size(); ++i) {
        degrees_[i] = std::accumulate(exponents_[i].begin(),
                                      exponents_[i].end(), 0u);
        lookup_[key(exponents_[i])] = i;
    }
    for (unsigned d = 0; d <= order; ++d) {
        std::size_t first = 0;
        while (first < degrees_.size() && degrees_[first] < d) ++first;
        offsets_[d] = first;
    }
    offsets_[order + 1] = exponents_.size();
}

std::uint64_t MonomialTable::key(const Expo& e) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < nvars_; ++i)
        k |= static_cast<std::uint64_t>(e[i]) << (bits_per_var_ * i);
    return k;
}

std::size_t MonomialTable::index(const Expo& e) const {
    auto it = lookup_.find(key(e));
    assert(it != lookup_.end());
    return it->second;
}

std::size_t MonomialTable::product_index(std::size_t a, std::size_t b) const {
    // degrees have been checked by the caller
    auto it = lookup_.find(key(exponents_[a]) + key(exponents_[b]));
    assert(it != lookup_.end());
    return it->second;
}

std::shared_ptr<const MonomialTable> MonomialTable::get(std::size_t nvars,
                                                        unsigned order) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, unsigned>,
                    std::shared_ptr<const MonomialTable>>
        cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(nvars, order);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto table = std::make_shared<const MonomialTable>(nvars, order);
    cache[key] = table;
    return table;
}

TruncSeries TruncSeries::from_poly(const MPoly& p,
                                   std::shared_ptr<const MonomialTable> table) {
    assert(p.nvars() == table->nvars());
    TruncSeries s(std::move(table));
    for (const auto& [e, c] : p.terms()) {
        unsigned d = std::accumulate(e.begin(), e.end(), 0u);
        if (d <= s.order()) s.coeffs_[s.table_->index(e)] = c;
    }
    return s;
}

TruncSeries TruncSeries::variable(std::shared_ptr<const MonomialTable> table,
                                  std::size_t var) {
    TruncSeries s(std::move(table));
    Expo e(s.nvars(), 0);
    e[var] = 1;
    s.coeffs_[s.table_->index(e)] = 1;
    return s;
}

TruncSeries TruncSeries::constant(std::shared_ptr<const MonomialTable> table,
                                  const Rat& c) {
    TruncSeries s(std::move(table));
    s.coeffs_[0] = c;
    return s;
}

Rat TruncSeries::coeff(const Expo& e) const {
    unsigned d = std::accumulate(e.begin(), e.end(), 0u);
    if (d > order()) return Rat(0);
    return coeffs_[table_->index(e)];
}

bool TruncSeries::is_zero() const {
    for (const auto& c : coeffs_)
        if (sgn(c) != 0) return false;
    return true;
}

TruncSeries TruncSeries::operator+(const TruncSeries& rhs) const {
    assert(table_ == rhs.table_);
    TruncSeries s(table_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        s.coeffs_[i] = coeffs_[i] + rhs.coeffs_[i];
    return s;
}

TruncSeries TruncSeries::operator-(const TruncSeries& rhs) const {
    assert(table_ == rhs.table_);
    TruncSeries s(table_);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        s.coeffs_[i] = coeffs_[i] - rhs.coeffs_[i];
    return s;
}

TruncSeries TruncSeries::operator*(const TruncSeries& rhs) const {
    return mul_bounded(rhs, order());
}

TruncSeries TruncSeries::mul_bounded(const TruncSeries& rhs,
                                     unsigned bound) const {
    assert(table_ == rhs.table_);
    TruncSeries s(table_);
    std::vector<std::size_t> nz_a, nz_b;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (sgn(coeffs_[i]) != 0) nz_a.push_back(i);
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
        if (sgn(rhs.coeffs_[i]) != 0) nz_b.push_back(i);
    for (std::size_t ia : nz_a) {
        const unsigned da = table_->degree(ia);
        if (da > bound) break;  // graded order: the rest are too big
        for (std::size_t ib : nz_b) {
            if (da + table_->degree(ib) > bound) break;
            s.coeffs_[table_->product_index(ia, ib)] +=
                coeffs_[ia] * rhs.coeffs_[ib];
        }
    }
    return s;
}

TruncSeries TruncSeries::operator*(const Rat& c) const {
    TruncSeries s(table_);
    if (sgn(c) == 0) return s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) s.coeffs_[i] = coeffs_[i] * c;
    return s;
}

TruncSeries TruncSeries::reciprocal() const {
    if (sgn(constant_term()) == 0)
        throw Error("exact", "reciprocal", "zero constant term");
    // 1/(c + u) = (1/c) * sum (-u/c)^k
    const Rat c = constant_term();
    TruncSeries u = *this;
    u.coeffs_[0] = 0;
    TruncSeries acc = TruncSeries::constant(table_, 1 / c);
    TruncSeries power = TruncSeries::constant(table_, 1);
    const Rat neg_inv = -1 / c;
    Rat factor = 1 / c;
    for (unsigned k = 1; k <= order(); ++k) {
        power = power * u;
        if (power.is_zero()) break;
        factor *= neg_inv;
        acc = acc + power * factor;
    }
    return acc;
}

MPoly TruncSeries::to_poly() const {
    MPoly p(nvars());
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (sgn(coeffs_[i]) != 0) p.add_term(table_->exponent(i), coeffs_[i]);
    return p;
}

MPoly TruncSeries::homogeneous_part(unsigned d) const {
    MPoly p(nvars());
    if (d > order()) return p;
    const std::size_t lo = table_->degree_offset(d);
    const std::size_t hi = table_->degree_offset(d + 1);
    for (std::size_t i = lo; i < hi; ++i)
        if (sgn(coeffs_[i]) != 0) p.add_term(table_->exponent(i), coeffs_[i]);
    return p;
}

namespace {

// Monomial-value cache for composition: value(e) over the substitution tuple,
// computed from a parent monomial value by one bounded multiplication.
class CompositionCache {
public:
    CompositionCache(const std::vector<TruncSeries>& values, unsigned bound)
        : values_(values), bound_(bound), table_(values.front().table()) {
        cache_.resize(table_->size());
        have_.assign(table_->size(), false);
        cache_[0] = TruncSeries::constant(table_, 1);
        have_[0] = true;
    }

    const TruncSeries& value(std::size_t idx) {
        if (have_[idx]) return cache_[idx];
        const Expo& e = table_->exponent(idx);
        std::size_t var = 0;
        while (e[var] == 0) ++var;
        Expo parent = e;
        parent[var] -= 1;
        const TruncSeries& p = value(table_->index(parent));
        cache_[idx] = p.mul_bounded(values_[var], bound_);
        have_[idx] = true;
        return cache_[idx];
    }

private:
    const std::vector<TruncSeries>& values_;
    unsigned bound_;
    std::shared_ptr<const MonomialTable> table_;
    std::vector<TruncSeries> cache_;
    std::vector<bool> have_;
};

}  // namespace

TruncSeries compose(const TruncSeries& f,
                    const std::vector<TruncSeries>& values) {
    assert(values.size() == f.nvars());
    for (const auto& v : values)
        if (sgn(v.constant_term()) != 0)
            throw Error("exact", "compose",
                        "substituted series must have zero constant term");
    const auto out_table = values.empty() ? f.table() : values.front().table();
    CompositionCache cache(values, out_table->order());
    TruncSeries acc(out_table);
    const auto& ftab = *f.table();
    for (std::size_t i = 0; i < ftab.size(); ++i) {
        if (sgn(f.coeff(i)) == 0) continue;
        if (ftab.degree(i) > out_table->order()) break;
        acc = acc + cache.value(out_table->index(ftab.exponent(i))) * f.coeff(i);
    }
    return acc;
}

std::vector<TruncSeries> series_invert_map(const std::vector<TruncSeries>& f) {
    const std::size_t n = f.size();
    if (n == 0) return {};
    const auto table = f.front().table();
    const unsigned K = table->order();
    for (const auto& fi : f)
        if (sgn(fi.constant_term()) != 0)
            throw Error("exact", "series_invert_map", "non-invertible jet");

    MatRat lin(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Expo e(n, 0);
            e[j] = 1;
            lin(i, j) = f[i].coeff(e);
        }
    if (rank_exact(lin) != n)
        throw Error("exact", "series_invert_map", "non-invertible jet");

    // columns of L^{-1}
    MatRat lin_inv(n, n);
    {
        MatRat aug(n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) aug(i, j) = lin(i, j);
            aug(i, n + i) = 1;
        }
        MatRat r = rref(aug);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) lin_inv(i, j) = r(i, n + j);
    }

    // g_1 = L^{-1} x, then Newton-style correction one degree at a time:
    // g <- g - L^{-1} (f(g) - x)
    std::vector<TruncSeries> g(n, TruncSeries(table));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(lin_inv(i, j)) == 0) continue;
            g[i] = g[i] + TruncSeries::variable(table, j) * lin_inv(i, j);
        }
    for (unsigned ord = 2; ord <= K; ++ord) {
        std::vector<TruncSeries> residual(n, TruncSeries(table));
        bool all_zero = true;
        for (std::size_t i = 0; i < n; ++i) {
            residual[i] = compose(f[i], g) - TruncSeries::variable(table, i);
            if (!residual[i].is_zero()) all_zero = false;
        }
        if (all_zero) break;
        for (std::size_t i = 0; i < n; ++i) {
            TruncSeries corr(table);
            for (std::size_t j = 0; j < n; ++j) {
                if (sgn(lin_inv(i, j)) == 0) continue;
                corr = corr + residual[j] * lin_inv(i, j);
            }
            g[i] = g[i] - corr;
        }
    }
    return g;
}

}  // namespace pdgeo
