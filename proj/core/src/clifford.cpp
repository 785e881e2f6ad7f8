#include "pdgeo/clifford.hpp"

#include <algorithm>
#include <cassert>

#include "pdgeo/error.hpp"

namespace pdgeo {

CliffordElem CliffordElem::scalar(std::size_t dim, const Rat& c) {
    CliffordElem e;
    e.dim = dim;
    if (sgn(c) != 0) e.coeffs[0] = c;
    return e;
}

CliffordElem CliffordElem::vector(const RatVec& v) {
    CliffordElem e;
    e.dim = v.size();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) e.coeffs[1u << i] = v[i];
    return e;
}

CliffordElem CliffordElem::blade(std::size_t dim, std::uint32_t mask,
                                 const Rat& c) {
    CliffordElem e;
    e.dim = dim;
    if (sgn(c) != 0) e.coeffs[mask] = c;
    return e;
}

void CliffordElem::add(std::uint32_t mask, const Rat& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = coeffs.emplace(mask, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) coeffs.erase(it);
    }
}

bool CliffordElem::is_zero() const { return coeffs.empty(); }

bool CliffordElem::as_vector(RatVec& out) const {
    out.assign(dim, Rat(0));
    for (const auto& [mask, c] : coeffs) {
        if (__builtin_popcount(mask) != 1) return false;
        out[static_cast<std::size_t>(__builtin_ctz(mask))] = c;
    }
    return true;
}

CliffordElem CliffordElem::operator+(const CliffordElem& rhs) const {
    assert(dim == rhs.dim);
    CliffordElem e = *this;
    for (const auto& [mask, c] : rhs.coeffs) e.add(mask, c);
    return e;
}

CliffordElem CliffordElem::operator-(const CliffordElem& rhs) const {
    assert(dim == rhs.dim);
    CliffordElem e = *this;
    for (const auto& [mask, c] : rhs.coeffs) e.add(mask, -c);
    return e;
}

CliffordElem CliffordElem::operator*(const Rat& c) const {
    CliffordElem e;
    e.dim = dim;
    if (sgn(c) == 0) return e;
    for (const auto& [mask, q] : coeffs) e.coeffs[mask] = q * c;
    return e;
}

MatRat hyperbolic_form(std::size_t m) {
    if (m % 2 != 0)
        throw Error("clifford", "hyperbolic_form", "dimension must be even");
    MatRat q(m, m);
    for (std::size_t i = 0; i < m / 2; ++i) {
        q(i, m / 2 + i) = 1;
        q(m / 2 + i, i) = 1;
    }
    return q;
}

namespace {

// sign of moving e_i across the elements of `mask` below i
int sign_below(std::uint32_t mask, std::size_t i) {
    std::uint32_t lower = mask & ((1u << i) - 1);
    return __builtin_popcount(lower) % 2 == 0 ? 1 : -1;
}

// e_i contracted into a blade: antiderivation pairing through Q
void contract_into(std::size_t i, std::uint32_t mask, const Rat& coeff,
                   const MatRat& Q, CliffordElem& out) {
    int position_sign = 1;
    for (std::uint32_t rest = mask; rest;) {
        std::uint32_t low = rest & ~(rest - 1);
        std::size_t j = static_cast<std::size_t>(__builtin_ctz(low));
        const Rat& qij = Q(i, j);
        if (sgn(qij) != 0) out.add(mask & ~low, coeff * qij * position_sign);
        position_sign = -position_sign;
        rest &= rest - 1;
    }
}

// left multiplication by e_i: contraction plus wedge
CliffordElem vector_mul(std::size_t i, const CliffordElem& y, const MatRat& Q) {
    CliffordElem out;
    out.dim = y.dim;
    for (const auto& [mask, c] : y.coeffs) {
        contract_into(i, mask, c, Q, out);
        if (!(mask & (1u << i))) out.add(mask | (1u << i), c * sign_below(mask, i));
    }
    return out;
}

// left multiplication by a blade e_S, via the recursion
//   L(e_i ^ B) = L(e_i) L(B) - L(e_i contracted into B)
CliffordElem blade_mul(std::uint32_t mask, const CliffordElem& y,
                       const MatRat& Q) {
    if (mask == 0) return y;
    std::size_t i = static_cast<std::size_t>(__builtin_ctz(mask));
    std::uint32_t rest = mask & (mask - 1);
    CliffordElem first = vector_mul(i, blade_mul(rest, y, Q), Q);
    CliffordElem contracted;
    contracted.dim = y.dim;
    contract_into(i, rest, Rat(1), Q, contracted);
    CliffordElem second;
    second.dim = y.dim;
    for (const auto& [cmask, cc] : contracted.coeffs) {
        CliffordElem part = blade_mul(cmask, y, Q);
        for (const auto& [pm, pc] : part.coeffs) second.add(pm, pc * cc);
    }
    return first - second;
}

}  // namespace

CliffordElem clifford_mul(const CliffordElem& a, const CliffordElem& b,
                          const MatRat& Q) {
    if (a.dim != b.dim)
        throw Error("clifford", "clifford_mul", "dimension mismatch");
    if (Q.rows() != a.dim || !Q.is_symmetric())
        throw Error("clifford", "clifford_mul", "Q must be symmetric m x m");
    CliffordElem out;
    out.dim = a.dim;
    for (const auto& [mask, c] : a.coeffs) {
        CliffordElem part = blade_mul(mask, b, Q);
        for (const auto& [pm, pc] : part.coeffs) out.add(pm, pc * c);
    }
    return out;
}

CliffordElem reverse(const CliffordElem& a) {
    CliffordElem out;
    out.dim = a.dim;
    for (const auto& [mask, c] : a.coeffs) {
        unsigned k = static_cast<unsigned>(__builtin_popcount(mask));
        out.coeffs[mask] = (k * (k + 1) / 2) % 2 == 0 ? c : -c;
    }
    return out;
}

RatVec rho(const CliffordElem& g, const RatVec& v, const MatRat& Q) {
    CliffordElem image =
        clifford_mul(clifford_mul(g, CliffordElem::vector(v), Q), reverse(g), Q);
    RatVec out;
    if (!image.as_vector(out))
        throw Error("clifford", "rho", "not in Pin: image leaves V");
    return out;
}

CliffordElem spin_action(const RatVec& v, const CliffordElem& alpha,
                         const MatRat& Q) {
    const std::size_t m = alpha.dim;
    if (m % 2 != 0 || v.size() != m)
        throw Error("clifford", "spin_action", "need an even split dimension");
    const std::uint32_t umask = (1u << (m / 2)) - 1;
    for (std::size_t i = 0; i < m / 2; ++i)
        for (std::size_t j = 0; j < m / 2; ++j) {
            if (sgn(Q(i, j)) != 0)
                throw Error("clifford", "spin_action", "U is not Q-null");
            if (sgn(Q(m / 2 + i, m / 2 + j)) != 0)
                throw Error("clifford", "spin_action", "U' is not Q-null");
        }
    for (const auto& [mask, c] : alpha.coeffs)
        if ((mask & ~umask) || __builtin_popcount(mask) % 2 != 0)
            throw Error("clifford", "spin_action",
                        "alpha must be even and supported on U");
    CliffordElem product = clifford_mul(CliffordElem::vector(v), alpha, Q);
    CliffordElem out;
    out.dim = m;
    for (const auto& [mask, c] : product.coeffs)
        if ((mask & ~umask) == 0 && __builtin_popcount(mask) % 2 == 1)
            out.coeffs[mask] = c;
    return out;
}

CliffordModuleData clifford_module_from_II(const QuadricSystem& A, Rng& rng) {
    const std::size_t n = A.tangent_dim;
    const std::size_t a = A.quadrics.size();
    CliffordModuleData data;
    data.v = ii_generic_vector(A, rng);
    data.ann_basis = ann_v(A, data.v);
    if (data.ann_basis.size() != 1)
        throw Error("clifford", "clifford_module_from_II",
                    "no critical tangential defect");
    MatRat P = A.combination(data.ann_basis.front());
    data.psing_basis = kernel_basis(P);
    data.ker_iiv = kernel_ii_v(A, data.v);

    for (const auto& w : data.ker_iiv)
        if (!in_span(data.psing_basis, w))
            throw Error("clifford", "clifford_module_from_II",
                        "ker II_v not contained in singloc(Ann(v))");
    if (!in_span(data.psing_basis, data.v))
        throw Error("clifford", "clifford_module_from_II",
                    "v not in singloc(Ann(v))");

    // complement basis of T modulo singloc(Ann(v))
    std::vector<RatVec> j_basis;
    {
        std::vector<RatVec> span = data.psing_basis;
        for (std::size_t e = 0; e < n && span.size() < n; ++e) {
            RatVec unit(n, Rat(0));
            unit[e] = 1;
            auto tentative = span;
            tentative.push_back(unit);
            if (rank_of_span(tentative) == span.size() + 1) {
                span.push_back(unit);
                j_basis.push_back(unit);
            }
        }
    }
    data.module_dim = j_basis.size();

    // singular-locus directions beyond {v, ker II_v}
    std::vector<RatVec> s_basis;
    {
        std::vector<RatVec> span = data.ker_iiv;
        span.push_back(data.v);
        for (const auto& w : data.psing_basis) {
            auto tentative = span;
            tentative.push_back(w);
            if (rank_of_span(tentative) == span.size() + 1) {
                span.push_back(w);
                s_basis.push_back(w);
            }
        }
    }

    // adapted normal basis: II(v,v), then II(v, e_s), II(v, e_j), completed
    auto image_of = [&](const RatVec& w) {
        RatVec img(a);
        for (std::size_t mu = 0; mu < a; ++mu)
            img[mu] = dot(A.quadrics[mu].apply(data.v), w);
        return img;
    };
    std::vector<RatVec> normal_cols;
    normal_cols.push_back(image_of(data.v));
    for (const auto& w : s_basis) normal_cols.push_back(image_of(w));
    const std::size_t j_offset = normal_cols.size();
    for (const auto& w : j_basis) normal_cols.push_back(image_of(w));
    if (rank_of_span(normal_cols) != normal_cols.size())
        throw Error("clifford", "clifford_module_from_II",
                    "degenerate adapted normal frame");
    for (std::size_t e = 0; e < a && normal_cols.size() < a; ++e) {
        RatVec unit(a, Rat(0));
        unit[e] = 1;
        auto tentative = normal_cols;
        tentative.push_back(unit);
        if (rank_of_span(tentative) == normal_cols.size() + 1)
            normal_cols.push_back(unit);
    }
    MatRat W(a, a);
    for (std::size_t c = 0; c < a; ++c)
        for (std::size_t r = 0; r < a; ++r) W(r, c) = normal_cols[c][r];
    MatRat Winv(a, a);
    {
        MatRat aug(a, 2 * a);
        for (std::size_t i = 0; i < a; ++i) {
            for (std::size_t j = 0; j < a; ++j) aug(i, j) = W(i, j);
            aug(i, a + i) = 1;
        }
        std::vector<std::size_t> pivots;
        MatRat r = rref(aug, &pivots);
        if (pivots.size() != a || pivots.back() != a - 1)
            throw Error("clifford", "clifford_module_from_II",
                        "adapted normal frame not invertible");
        for (std::size_t i = 0; i < a; ++i)
            for (std::size_t j = 0; j < a; ++j) Winv(i, j) = r(i, a + j);
    }
    std::vector<MatRat> adapted;
    for (std::size_t k = 0; k < a; ++k)
        adapted.push_back(A.combination(Winv.row(k)));

    // the induced form is well defined: every adapted quadric other than the
    // II(v,v)-dual restricts to zero on the singular locus
    for (std::size_t k = 1; k < a; ++k)
        for (const auto& u : data.psing_basis)
            for (const auto& w : data.psing_basis)
                if (sgn(dot(adapted[k].apply(u), w)) != 0)
                    throw Error("clifford", "clifford_module_from_II",
                                "Q_v not single-valued");

    const std::size_t dk = data.ker_iiv.size();
    data.qv = MatRat(dk, dk);
    for (std::size_t e1 = 0; e1 < dk; ++e1)
        for (std::size_t e2 = 0; e2 < dk; ++e2)
            data.qv(e1, e2) =
                dot(adapted[0].apply(data.ker_iiv[e1]), data.ker_iiv[e2]);

    // module maps: for each kernel direction, an endomorphism of T/SA(v)
    const std::size_t dmod = data.module_dim;
    for (std::size_t eps = 0; eps < dk; ++eps) {
        MatRat m(dmod, dmod);
        for (std::size_t k = 0; k < dmod; ++k)
            for (std::size_t j = 0; j < dmod; ++j)
                m(k, j) = dot(adapted[j_offset + k].apply(j_basis[j]),
                              data.ker_iiv[eps]);
        data.module_maps.push_back(m);
    }

    // the anticommutator relation, verified exactly
    for (std::size_t e1 = 0; e1 < dk; ++e1)
        for (std::size_t e2 = 0; e2 < dk; ++e2) {
            MatRat anti = data.module_maps[e1] * data.module_maps[e2] +
                          data.module_maps[e2] * data.module_maps[e1];
            MatRat expected =
                MatRat::identity(dmod).scaled(data.qv(e1, e2) * Rat(-2));
            if (!(anti == expected))
                throw Error("clifford", "clifford_module_from_II",
                            "module relation fails at kernel indices (" +
                                std::to_string(e1) + ", " + std::to_string(e2) +
                                ")");
        }
    return data;
}

}  // namespace pdgeo
