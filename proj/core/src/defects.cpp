#include "pdgeo/defects.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

#include "pdgeo/error.hpp"

namespace pdgeo {

namespace {

std::size_t span_dim_of_tangent_stack(const std::vector<ParamVariety const*>& Xs,
                                      Rng& rng, long height) {
    MatRat stacked(0, Xs.front()->ambient_dim + 1);
    for (const auto* X : Xs) {
        RatVec p = X->general_point(rng, height);
        stacked = stacked.stacked(X->tangent_frame_at(p));
    }
    return rank_exact(stacked);
}

}  // namespace

std::size_t secant_dim(const ParamVariety& X, std::size_t k, Rng& rng,
                       int retries, long height) {
    if (k < 1) throw Error("defects", "secant_dim", "need k >= 1");
    std::vector<ParamVariety const*> copies(k, &X);
    std::size_t best = 0;
    for (int t = 0; t < retries; ++t)
        best = std::max(best, span_dim_of_tangent_stack(copies, rng, height));
    return best - 1;
}

std::size_t join_dim(const ParamVariety& Y, const ParamVariety& Z, Rng& rng,
                     int retries, long height) {
    if (Y.ambient_dim != Z.ambient_dim)
        throw Error("defects", "join_dim", "ambient dimensions differ");
    std::size_t best = 0;
    for (int t = 0; t < retries; ++t)
        best = std::max(best, span_dim_of_tangent_stack({&Y, &Z}, rng, height));
    return best - 1;
}

TangentialDim tangential_dim(const ParamVariety& X, Rng& rng, int retries,
                             long height) {
    const std::size_t n = X.source_dim;
    const std::size_t N = X.ambient_dim;

    TangentialDim out;
    // method A: n + dim II_v(T) for a II-generic vector
    {
        std::size_t best = 0;
        for (int t = 0; t < retries; ++t) {
            RatVec p = X.general_point(rng, height);
            QuadricSystem A = jet_tower(X, p, 2).second_ff();
            RatVec v = ii_generic_vector(A, rng);
            best = std::max(best, n + dim_ii_v(A, v));
        }
        out.by_second_ff = best;
    }
    // method B: generic rank of the sweep (x, u) -> lift(x) + u^a d_a lift(x)
    {
        std::size_t best = 0;
        for (int t = 0; t < retries; ++t) {
            RatVec p = X.general_point(rng, height);
            RatVec u = rng.next_rat_vector(n, height);
            MatRat full(2 * n + 1, N + 1);
            // the swept point itself (scaling direction of the cone)
            full(0, 0) = 1;
            for (std::size_t i = 0; i < N; ++i) {
                Rat val = X.chart[i].eval(p);
                for (std::size_t a2 = 0; a2 < n; ++a2)
                    val += u[a2] * X.chart[i].derivative(a2).eval(p);
                full(0, i + 1) = val;
            }
            // d/dx_b
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t i = 0; i < N; ++i) {
                    MPoly db = X.chart[i].derivative(b);
                    Rat val = db.eval(p);
                    for (std::size_t a2 = 0; a2 < n; ++a2)
                        val += u[a2] * db.derivative(a2).eval(p);
                    full(1 + b, i + 1) = val;
                }
            // d/du_a
            for (std::size_t a2 = 0; a2 < n; ++a2)
                for (std::size_t i = 0; i < N; ++i)
                    full(1 + n + a2, i + 1) = X.chart[i].derivative(a2).eval(p);
            best = std::max(best, rank_exact(full));
        }
        out.by_jacobian = best - 1;
    }
    if (out.by_second_ff != out.by_jacobian)
        throw Error("defects", "tangential_dim", "genericity failure, re-seed");
    return out;
}

namespace {

// Exact values and first derivatives, at a point, of the signed-maximal-minor
// kernel vectors of the augmented Jacobian [lift; d lift] (the polynomial
// conormal frame, evaluated without expanding the minors symbolically).
struct ConormalFrame {
    std::vector<RatVec> values;
    std::vector<std::vector<RatVec>> derivatives;  // [vector][d/dx_g]
};

ConormalFrame conormal_frame(const ParamVariety& X, const RatVec& p) {
    const std::size_t n = X.source_dim;
    const std::size_t N = X.ambient_dim;
    MatRat J = X.tangent_frame_at(p);
    std::vector<MatRat> dJ(n, MatRat(n + 1, N + 1));
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t i = 0; i < N; ++i) {
            dJ[g](0, i + 1) = X.chart[i].derivative(g).eval(p);
            for (std::size_t b = 0; b < n; ++b)
                dJ[g](b + 1, i + 1) =
                    X.chart[i].derivative(b).derivative(g).eval(p);
        }

    std::vector<std::size_t> pivots;
    rref(J, &pivots);
    if (pivots.size() != n + 1)
        throw Error("defects", "dual_dim", "point not general");
    std::vector<bool> is_pivot(N + 1, false);
    for (auto c : pivots) is_pivot[c] = true;

    auto submatrix = [&](const std::vector<std::size_t>& cols, int diff_pos,
                         std::size_t g) {
        MatRat m(n + 1, n + 1);
        for (std::size_t r = 0; r <= n; ++r)
            for (std::size_t c = 0; c < cols.size(); ++c)
                m(r, c) = (static_cast<int>(c) == diff_pos) ? dJ[g](r, cols[c])
                                                            : J(r, cols[c]);
        return m;
    };

    ConormalFrame out;
    for (std::size_t j = 0; j <= N; ++j) {
        if (is_pivot[j]) continue;
        std::vector<std::size_t> set = pivots;
        set.push_back(j);
        std::sort(set.begin(), set.end());
        RatVec value(N + 1, Rat(0));
        std::vector<RatVec> derivs(n, RatVec(N + 1, Rat(0)));
        for (std::size_t k = 0; k < set.size(); ++k) {
            std::vector<std::size_t> cols;
            for (std::size_t c = 0; c < set.size(); ++c)
                if (c != k) cols.push_back(set[c]);
            const Rat sign = (k % 2 == 0) ? 1 : -1;
            value[set[k]] = sign * det_exact(submatrix(cols, -1, 0));
            for (std::size_t g = 0; g < n; ++g) {
                Rat acc = 0;  // d(det) = sum over differentiated columns
                for (std::size_t c = 0; c < cols.size(); ++c)
                    acc += det_exact(submatrix(cols, static_cast<int>(c), g));
                derivs[g][set[k]] = sign * acc;
            }
        }
        out.values.push_back(std::move(value));
        out.derivatives.push_back(std::move(derivs));
    }
    return out;
}

std::size_t conormal_image_dim(const ParamVariety& X, Rng& rng, long height) {
    const std::size_t n = X.source_dim;
    const std::size_t N = X.ambient_dim;
    const std::size_t a = N - n;
    RatVec p = X.general_point(rng, height);
    ConormalFrame frame = conormal_frame(X, p);
    RatVec lambda = rng.next_rat_vector(a, height);
    MatRat jac(a + n, N + 1);
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t c = 0; c <= N; ++c) jac(i, c) = frame.values[i][c];
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t c = 0; c <= N; ++c) {
            Rat acc = 0;
            for (std::size_t i = 0; i < a; ++i)
                acc += lambda[i] * frame.derivatives[i][g][c];
            jac(a + g, c) = acc;
        }
    return rank_exact(jac) - 1;
}

}  // namespace

DualDim dual_dim(const ParamVariety& X, Rng& rng, int retries, long height) {
    if (!X.expected_smooth)
        throw Error("defects", "dual_dim",
                    "rank method requires an expected-smooth variety");
    const std::size_t n = X.source_dim;
    const std::size_t a = X.codim();

    DualDim out;
    {
        std::size_t best_rank = 0;
        for (int t = 0; t < retries; ++t) {
            QuadricSystem A = second_ff(X, rng, static_cast<unsigned>(height));
            best_rank = std::max(best_rank, generic_quadric_rank(A, rng));
        }
        out.delta_star = n - best_rank;
        out.by_rank = n + a - 1 - out.delta_star;
    }
    {
        std::size_t best = 0;
        for (int t = 0; t < retries; ++t)
            best = std::max(best, conormal_image_dim(X, rng, height));
        out.by_conormal = best;
    }
    if (out.by_rank != out.by_conormal)
        throw Error("defects", "dual_dim",
                    "methods disagree: rank gives " +
                        std::to_string(out.by_rank) + ", conormal gives " +
                        std::to_string(out.by_conormal));
    return out;
}

namespace {

// Projective dimension of the wedge-coordinate Gauss image via the Gram
// matrix of { gamma, d_1 gamma, .., d_n gamma }: inner products of wedges of
// rows reduce to determinants of dot-product matrices (Cauchy-Binet).
std::size_t gauss_image_dim(const ParamVariety& X, const RatVec& p) {
    const std::size_t n = X.source_dim;
    MatRat J = X.tangent_frame_at(p);
    std::vector<MatRat> dJ(n, MatRat(n + 1, X.ambient_dim + 1));
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t i = 0; i < X.ambient_dim; ++i) {
            dJ[g](0, i + 1) = X.chart[i].derivative(g).eval(p);
            for (std::size_t b = 0; b < n; ++b)
                dJ[g](b + 1, i + 1) =
                    X.chart[i].derivative(b).derivative(g).eval(p);
        }
    MatRat P = J * J.transpose();
    std::vector<MatRat> Pg;  // Pg[g](k, l) = (J row k) . (dJ[g] row l)
    for (std::size_t g = 0; g < n; ++g) Pg.push_back(J * dJ[g].transpose());
    std::vector<std::vector<MatRat>> Pgh(n);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h)
            Pgh[g].push_back(dJ[g] * dJ[h].transpose());

    // det of the dot-product matrix with row `irow` differentiated in
    // direction gi and column `jrow` differentiated in direction hj
    auto patched_det = [&](int gi, std::size_t irow, int hj, std::size_t jrow) {
        MatRat m = P;
        if (gi >= 0)
            for (std::size_t c = 0; c <= n; ++c) m(irow, c) = Pg[gi](c, irow);
        if (hj >= 0) {
            for (std::size_t r = 0; r <= n; ++r) m(r, jrow) = Pg[hj](r, jrow);
            if (gi >= 0) m(irow, jrow) = Pgh[gi][hj](irow, jrow);
        }
        return det_exact(m);
    };
    auto gram_entry = [&](int g, int h) {
        Rat acc = 0;
        if (g < 0 && h < 0) return det_exact(P);
        if (g >= 0 && h < 0) {
            for (std::size_t i = 0; i <= n; ++i) acc += patched_det(g, i, -1, 0);
            return acc;
        }
        if (g < 0) {
            for (std::size_t j = 0; j <= n; ++j) acc += patched_det(-1, 0, h, j);
            return acc;
        }
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t j = 0; j <= n; ++j) acc += patched_det(g, i, h, j);
        return acc;
    };
    MatRat gram(n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t j = i; j <= n; ++j) {
            gram(i, j) =
                gram_entry(static_cast<int>(i) - 1, static_cast<int>(j) - 1);
            gram(j, i) = gram(i, j);
        }
    return rank_exact(gram) - 1;
}

}  // namespace

std::size_t gauss_defect(const ParamVariety& X, Rng& rng, long height) {
    RatVec p = X.general_point(rng, height);
    QuadricSystem A = jet_tower(X, p, 2).second_ff();
    const std::size_t by_singloc = singloc(A).size();
    const std::size_t by_wedge = X.source_dim - gauss_image_dim(X, p);
    if (by_singloc != by_wedge)
        throw Error("defects", "gauss_defect",
                    "singular-locus and wedge-map computations disagree");
    return by_singloc;
}

QuadricSystem dual_second_ff(const ParamVariety& X, const RatVec& point,
                             Rng& rng) {
    if (!X.expected_smooth)
        throw Error("defects", "dual_second_ff", "variety not expected smooth");
    JetTower tower = jet_tower(X, point, 3);
    QuadricSystem A = tower.second_ff();
    const std::size_t n = tower.tangent_dim;
    const std::size_t a = tower.normal_dim;

    const std::size_t r = generic_quadric_rank(A, rng);

    // generic tangent hyperplane: its quadric achieves the generic rank
    RatVec lambda;
    MatRat q_lambda;
    bool found = false;
    for (int trial = 0; trial < 40 && !found; ++trial) {
        lambda = rng.next_rat_vector(a, 7);
        q_lambda = A.combination(lambda);
        found = rank_exact(q_lambda) == r;
    }
    if (!found)
        throw Error("defects", "dual_second_ff", "no generic hyperplane found");

    // adapted normal coordinates: invertible S whose last row is lambda
    MatRat S(a, a);
    {
        std::vector<RatVec> chosen{lambda};
        std::size_t next_row = 0;
        for (std::size_t e = 0; e < a && next_row + 1 < a; ++e) {
            RatVec unit(a, Rat(0));
            unit[e] = 1;
            auto tentative = chosen;
            tentative.push_back(unit);
            if (rank_of_span(tentative) == chosen.size() + 1) {
                chosen.push_back(unit);
                for (std::size_t mu = 0; mu < a; ++mu)
                    S(next_row, mu) = unit[mu];
                ++next_row;
            }
        }
        if (next_row + 1 != a)
            throw Error("defects", "dual_second_ff", "frame completion failed");
        for (std::size_t mu = 0; mu < a; ++mu) S(a - 1, mu) = lambda[mu];
    }
    std::vector<MatRat> adapted;
    for (std::size_t k = 0; k < a; ++k) adapted.push_back(A.combination(S.row(k)));

    // adapted tangent basis: singloc(q_lambda) first, then a completion
    std::vector<RatVec> t_basis = kernel_basis(q_lambda);
    const std::size_t fiber = t_basis.size();  // n - r = delta_*
    std::vector<RatVec> j_basis;
    {
        std::vector<RatVec> span = t_basis;
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
        if (fiber + j_basis.size() != n)
            throw Error("defects", "dual_second_ff", "tangent adaptation failed");
    }
    assert(j_basis.size() == r);

    // inversion formula, blocked (a-1, r) x (a-1, r):
    //   Q_0 = [[0, 0], [0, q^{last}(e_j, e_k)]]
    //   Q_s = [[0, q^{kappa}(e_s, e_j)], [sym, r^{last}(e_s, e_j, e_k)]]
    const std::size_t dual_tangent = (a - 1) + r;
    QuadricSystem out;
    out.tangent_dim = dual_tangent;

    MatRat Q0(dual_tangent, dual_tangent);
    for (std::size_t jj = 0; jj < r; ++jj)
        for (std::size_t kk = 0; kk < r; ++kk)
            Q0(a - 1 + jj, a - 1 + kk) =
                dot(adapted[a - 1].apply(j_basis[jj]), j_basis[kk]);
    out.quadrics.push_back(Q0);
    out.labels.push_back("Q0");

    for (std::size_t s = 0; s < fiber; ++s) {
        MatRat Qs(dual_tangent, dual_tangent);
        for (std::size_t kappa = 0; kappa + 1 < a; ++kappa)
            for (std::size_t jj = 0; jj < r; ++jj) {
                Rat value = dot(adapted[kappa].apply(t_basis[s]), j_basis[jj]);
                Qs(kappa, a - 1 + jj) = value;
                Qs(a - 1 + jj, kappa) = value;
            }
        for (std::size_t jj = 0; jj < r; ++jj)
            for (std::size_t kk = jj; kk < r; ++kk) {
                Rat value = 0;
                for (std::size_t mu = 0; mu < a; ++mu)
                    if (sgn(S(a - 1, mu)) != 0)
                        value +=
                            S(a - 1, mu) *
                            tower.tensor(
                                mu, 3, {t_basis[s], j_basis[jj], j_basis[kk]});
                Qs(a - 1 + jj, a - 1 + kk) = value;
                Qs(a - 1 + kk, a - 1 + jj) = value;
            }
        out.quadrics.push_back(Qs);
        out.labels.push_back("Q" + std::to_string(s + 1));
    }
    return out;
}

DefectReport defect_report(const ParamVariety& X, std::size_t k,
                           std::uint64_t seed, int retries, long height) {
    DefectReport rep;
    rep.variety = X.name;
    rep.n = X.source_dim;
    rep.N = X.ambient_dim;
    rep.secant_k = k;
    rep.seed = seed;
    const std::size_t n = rep.n, N = rep.N, a = N - n;

    Rng rs = seeded_stream(seed, "secant");
    rep.secant_dimension = secant_dim(X, k, rs, retries, height);
    // defect against the naive expected dimension, uncapped
    rep.secant_defect = k * (n + 1) - 1 - rep.secant_dimension;

    Rng rt = seeded_stream(seed, "tangential");
    rep.tangential_dimension = tangential_dim(X, rt, retries, height).dim();
    rep.tangential_defect = 2 * n - rep.tangential_dimension;

    Rng rd = seeded_stream(seed, "dual");
    DualDim dd = dual_dim(X, rd, retries, height);
    rep.dual_dimension = dd.dim();
    rep.dual_defect = dd.delta_star;

    Rng rg = seeded_stream(seed, "gauss");
    rep.gauss_fiber_dim = gauss_defect(X, rg, height);

    DefectChecks c;
    if (X.expected_smooth && 2 * a < n + 4)
        c.zak_linear_normality = rep.secant_dimension == std::min(2 * n + 1, N);
    c.dual_bound = rep.dual_defect + 1 <= a;
    c.landman_parity = (n - rep.dual_defect) % 2 == 0;
    c.superadditivity =
        rep.secant_dimension <= n + (k - 1) * (n + 1 - rep.secant_defect);
    rep.checks = c;
    return rep;
}

}  // namespace pdgeo
