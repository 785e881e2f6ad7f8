#include "pdgeo/osc.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>

#include "pdgeo/error.hpp"
#include "pdgeo/series.hpp"

namespace pdgeo {

namespace {

void degree_monomials(std::size_t nvars, unsigned d, std::vector<Expo>& out) {
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

}  // namespace

OscReport osculating_space(const ParamVariety& X, const RatVec& point,
                           unsigned d, unsigned p_ord, bool with_basis) {
    if (d < 1) throw Error("osc", "osculating_space", "need degree >= 1");
    if (!X.point_is_general(point))
        throw Error("osc", "osculating_space", "point not general");
    const std::size_t n = X.source_dim;
    const std::size_t N = X.ambient_dim;

    OscReport report;
    report.degree = d;
    report.order = p_ord;
    degree_monomials(N + 1, d, report.monomials);
    report.form_space_dim = report.monomials.size();

    // truncated series of the recentered lift coordinates
    auto table = MonomialTable::get(n, p_ord);
    std::vector<TruncSeries> lift;
    lift.push_back(TruncSeries::constant(table, 1));
    for (std::size_t i = 0; i < N; ++i)
        lift.push_back(
            TruncSeries::from_poly(X.chart[i].shifted(point).truncated(p_ord),
                                   table));

    // pullback of each degree-d monomial, with shared partial products
    std::map<Expo, TruncSeries> cache;
    {
        Expo unit(N + 1, 0);
        cache.emplace(unit, TruncSeries::constant(table, 1));
    }
    std::function<const TruncSeries&(const Expo&)> pullback =
        [&](const Expo& e) -> const TruncSeries& {
        auto it = cache.find(e);
        if (it != cache.end()) return it->second;
        std::size_t var = 0;
        while (e[var] == 0) ++var;
        Expo parent = e;
        parent[var] -= 1;
        TruncSeries value = pullback(parent) * lift[var];
        return cache.emplace(e, std::move(value)).first->second;
    };

    // conditions: all Taylor coefficients through order p_ord vanish
    MatRat conditions(table->degree_offset(p_ord + 1), report.monomials.size());
    for (std::size_t c = 0; c < report.monomials.size(); ++c) {
        const TruncSeries& s = pullback(report.monomials[c]);
        for (std::size_t r = 0; r < conditions.rows(); ++r)
            conditions(r, c) = s.coeff(r);
    }
    if (with_basis) {
        report.basis = kernel_basis(conditions);
        report.dimension = report.basis.size();
    } else {
        report.dimension = report.monomials.size() - rank_exact(conditions);
    }
    return report;
}

namespace {

// reduce a raw syzygy (one pair per coordinate covector) to independent pairs
SyzygyWitness reduce_syzygy(std::vector<RatVec> lin, std::vector<MatRat> quad) {
    const std::size_t n = lin.empty() ? 0 : lin.front().size();
    auto flatten = [&](const MatRat& q) {
        RatVec row;
        for (std::size_t i = 0; i < q.rows(); ++i)
            for (std::size_t j = 0; j < q.cols(); ++j) row.push_back(q(i, j));
        return row;
    };
    // select a maximal independent set of quadrics; fold the rest into the
    // linear forms of the selected ones
    std::vector<std::size_t> selected;
    std::vector<RatVec> span;
    for (std::size_t i = 0; i < quad.size(); ++i) {
        RatVec row = flatten(quad[i]);
        if (!in_span(span, row)) {
            span.push_back(row);
            selected.push_back(i);
        }
    }
    SyzygyWitness w;
    for (std::size_t idx : selected) {
        w.linear_forms.push_back(lin[idx]);
        w.quadrics.push_back(quad[idx]);
    }
    for (std::size_t i = 0; i < quad.size(); ++i) {
        if (std::find(selected.begin(), selected.end(), i) != selected.end())
            continue;
        // quad[i] = sum c_k quad[selected_k]; fold l_i into the selected pairs
        MatRat stacked(span.size(), span.front().size());
        for (std::size_t r = 0; r < span.size(); ++r)
            for (std::size_t c = 0; c < span.front().size(); ++c)
                stacked(r, c) = span[r][c];
        RatVec coeffs;
        if (!solve_linear(stacked.transpose(), flatten(quad[i]), coeffs))
            continue;  // cannot happen: selected set spans
        for (std::size_t k = 0; k < selected.size(); ++k)
            for (std::size_t t = 0; t < n; ++t)
                w.linear_forms[k][t] += coeffs[k] * lin[i][t];
    }
    // drop pairs whose folded linear form became zero
    SyzygyWitness out;
    for (std::size_t k = 0; k < w.quadrics.size(); ++k) {
        bool zero = true;
        for (const auto& c : w.linear_forms[k]) zero = zero && sgn(c) == 0;
        if (!zero) {
            out.linear_forms.push_back(w.linear_forms[k]);
            out.quadrics.push_back(w.quadrics[k]);
        }
    }
    return out;
}

MPoly quadric_to_poly(const MatRat& q, std::size_t n) {
    MPoly p(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Rat c = (i == j) ? q(i, i) / 2 : q(i, j);
            if (sgn(c) == 0) continue;
            Expo e(n, 0);
            e[i] += 1;
            e[j] += 1;
            p.add_term(e, c);
        }
    return p;
}

}  // namespace

SyzygyReport linear_syzygies(const QuadricSystem& A, Rng* rng) {
    const std::size_t n = A.tangent_dim;
    SyzygyReport report;
    // independent basis of the span
    std::vector<MatRat> basis;
    {
        std::vector<RatVec> span;
        for (const auto& q : A.quadrics) {
            RatVec row;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) row.push_back(q(i, j));
            if (!in_span(span, row)) {
                span.push_back(row);
                basis.push_back(q);
            }
        }
    }
    report.system_dim = basis.size();
    if (basis.empty()) return report;

    // symmetrization matrix: columns (gamma, i) -> cubic x_gamma Q_i
    std::vector<Expo> cubics;
    degree_monomials(n, 3, cubics);
    std::map<Expo, std::size_t> cubic_index;
    for (std::size_t i = 0; i < cubics.size(); ++i) cubic_index[cubics[i]] = i;
    MatRat m(cubics.size(), n * basis.size());
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t i = 0; i < basis.size(); ++i) {
            MPoly prod = MPoly::variable(n, g) * quadric_to_poly(basis[i], n);
            for (const auto& [e, c] : prod.terms())
                m(cubic_index[e], g * basis.size() + i) += c;
        }
    auto kernel = kernel_basis(m);
    report.syzygy_dim = kernel.size();
    if (kernel.empty()) return report;

    // witness from the first kernel vector
    std::vector<RatVec> lin;
    std::vector<MatRat> quad;
    for (std::size_t g = 0; g < n; ++g) {
        MatRat R(n, n);
        bool nonzero = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            const Rat& c = kernel.front()[g * basis.size() + i];
            if (sgn(c) == 0) continue;
            R = R + basis[i].scaled(c);
            nonzero = true;
        }
        if (!nonzero || R.is_zero()) continue;
        RatVec l(n, Rat(0));
        l[g] = 1;
        lin.push_back(l);
        quad.push_back(R);
    }
    report.witness = reduce_syzygy(std::move(lin), std::move(quad));
    report.has_witness = !report.witness.quadrics.empty();

    // rank bound: every quadric in the witness span has rank <= 2 (p - 1)
    if (report.has_witness) {
        const std::size_t p = report.witness.quadrics.size();
        QuadricSystem W;
        W.tangent_dim = n;
        W.quadrics = report.witness.quadrics;
        for (std::size_t i = 0; i < p; ++i)
            W.labels.push_back("w" + std::to_string(i));
        std::size_t max_rank = 0;
        for (const auto& q : W.quadrics)
            max_rank = std::max(max_rank, rank_exact(q));
        Rng fallback(0x5332u);
        Rng& r = rng ? *rng : fallback;
        max_rank = std::max(max_rank, generic_quadric_rank(W, r));
        report.rank_bound_ok = max_rank <= 2 * (p - 1);
    }
    return report;
}

MongeSolution monge_check(const ParamVariety& X, const RatVec& point,
                          Rng& rng) {
    JetTower tower = jet_tower(X, point, 5);
    const std::size_t n = tower.tangent_dim;
    const std::size_t a = tower.normal_dim;
    QuadricSystem A = tower.second_ff();

    MongeSolution sol;
    sol.frame_inv = tower.frame_inv;
    sol.center = point;
    SyzygyReport syz = linear_syzygies(A, &rng);
    sol.syzygy_dim = syz.syzygy_dim;
    const bool third_form_vanishes = tower.filtration[1] == 0;
    sol.preconditions_ok = third_form_vanishes && syz.syzygy_dim == 0;

    // joint linear system: unknowns A^mu_{nu gamma} (a a n) and symmetric
    // b^mu_{nu tau} (a a(a+1)/2); equations express that the triangular
    // quadrics x^mu x^0 - (1/2) q^mu - A - b osculate to order 5
    const std::size_t a_unknowns = a * a * n;
    const std::size_t pair_count = a * (a + 1) / 2;
    const std::size_t unknowns = a_unknowns + a * pair_count;
    auto a_index = [&](std::size_t mu, std::size_t nu, std::size_t g) {
        return (mu * a + nu) * n + g;
    };
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t nu = 0; nu < a; ++nu)
        for (std::size_t tau = nu; tau < a; ++tau) pairs.push_back({nu, tau});
    auto b_index = [&](std::size_t mu, std::size_t pair) {
        return a_unknowns + mu * pair_count + pair;
    };

    // rows per order: for each mu and degree-k monomial
    std::vector<Expo> rows_by_order[3];
    for (unsigned k = 3; k <= 5; ++k)
        degree_monomials(n, k, rows_by_order[k - 3]);

    std::vector<std::size_t> order_rows(3);
    for (unsigned k = 0; k < 3; ++k)
        order_rows[k] = a * rows_by_order[k].size();
    const std::size_t total_rows = order_rows[0] + order_rows[1] + order_rows[2];
    MatRat m(total_rows, unknowns);
    RatVec rhs(total_rows, Rat(0));

    std::size_t row0 = 0;
    for (unsigned k = 3; k <= 5; ++k) {
        const auto& monos = rows_by_order[k - 3];
        std::map<Expo, std::size_t> mono_index;
        for (std::size_t i = 0; i < monos.size(); ++i) mono_index[monos[i]] = i;
        for (std::size_t mu = 0; mu < a; ++mu) {
            const std::size_t base = row0 + mu * monos.size();
            // rhs: F_k^mu
            for (const auto& [e, c] : tower.parts[mu][k].terms())
                rhs[base + mono_index[e]] = c;
            // A-terms: sum_nu A^mu_{nu gamma} x_gamma F_{k-1}^nu
            for (std::size_t nu = 0; nu < a; ++nu)
                for (std::size_t g = 0; g < n; ++g) {
                    MPoly prod =
                        MPoly::variable(n, g) * tower.parts[nu][k - 1];
                    for (const auto& [e, c] : prod.terms())
                        m(base + mono_index[e], a_index(mu, nu, g)) += c;
                }
            // b-terms
            for (std::size_t pr = 0; pr < pairs.size(); ++pr) {
                auto [nu, tau] = pairs[pr];
                // b is a per-monomial coefficient of x^nu x^tau (nu <= tau)
                MPoly prod(n);
                if (k == 4) {
                    prod = tower.parts[nu][2] * tower.parts[tau][2];
                } else if (k == 5) {
                    prod = tower.parts[nu][2] * tower.parts[tau][3] +
                           tower.parts[tau][2] * tower.parts[nu][3];
                }
                if (prod.is_zero()) continue;
                for (const auto& [e, c] : prod.terms())
                    m(base + mono_index[e], b_index(mu, pr)) += c;
            }
        }
        row0 += a * monos.size();
    }

    auto stacked_solvable = [&](std::size_t rows, RatVec* solution) {
        MatRat sub(rows, unknowns);
        RatVec subrhs(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < unknowns; ++c) sub(r, c) = m(r, c);
            subrhs[r] = rhs[r];
        }
        RatVec x;
        if (!solve_linear(sub, subrhs, x)) return false;
        if (solution) *solution = x;
        return true;
    };
    sol.solvable3 = stacked_solvable(order_rows[0], nullptr);
    sol.solvable4 = sol.solvable3 &&
                    stacked_solvable(order_rows[0] + order_rows[1], nullptr);
    RatVec solution;
    sol.solvable5 = sol.solvable4 && stacked_solvable(total_rows, &solution);

    if (!sol.preconditions_ok)
        sol.verdict = "precondition-failed";
    else if (sol.solvable5)
        sol.verdict = "holds";
    else if (!sol.solvable3)
        sol.verdict = "fails-at-order-3";
    else if (!sol.solvable4)
        sol.verdict = "fails-at-order-4";
    else
        sol.verdict = "fails-at-order-5";

    // direct osculating-space dimensions for cross-validation
    sol.osc3_dim = osculating_space(X, point, 2, 3, false).dimension;
    sol.osc4_dim = osculating_space(X, point, 2, 4, false).dimension;

    // assemble the recovered quadrics in the adapted ambient coordinates:
    // coordinates ordered (y_0, y_alpha, y_mu)
    if (sol.solvable5) {
        degree_monomials(X.ambient_dim + 1, 2, sol.quadric_monomials);
        std::map<Expo, std::size_t> qindex;
        for (std::size_t i = 0; i < sol.quadric_monomials.size(); ++i)
            qindex[sol.quadric_monomials[i]] = i;
        const std::size_t NA = X.ambient_dim + 1;
        auto unit2 = [&](std::size_t i, std::size_t j) {
            Expo e(NA, 0);
            e[i] += 1;
            e[j] += 1;
            return e;
        };
        for (std::size_t mu = 0; mu < a; ++mu) {
            RatVec coeffs(sol.quadric_monomials.size(), Rat(0));
            coeffs[qindex[unit2(0, 1 + n + mu)]] += 1;  // x^mu x^0
            // -(1/2) q^mu_{alpha beta} x^alpha x^beta
            MatRat q = tower.hessian(mu);
            for (std::size_t al = 0; al < n; ++al)
                for (std::size_t be = al; be < n; ++be) {
                    Rat c = (al == be) ? q(al, al) / 2 : q(al, be);
                    coeffs[qindex[unit2(1 + al, 1 + be)]] -= c;
                }
            // -A^mu_{nu gamma} x^nu x^gamma
            for (std::size_t nu = 0; nu < a; ++nu)
                for (std::size_t g = 0; g < n; ++g) {
                    const Rat& c = solution[a_index(mu, nu, g)];
                    if (sgn(c) != 0)
                        coeffs[qindex[unit2(1 + g, 1 + n + nu)]] -= c;
                }
            // -b^mu_{nu tau} x^nu x^tau
            for (std::size_t pr = 0; pr < pairs.size(); ++pr) {
                const Rat& c = solution[b_index(mu, pr)];
                if (sgn(c) == 0) continue;
                auto [nu, tau] = pairs[pr];
                coeffs[qindex[unit2(1 + n + nu, 1 + n + tau)]] -= c;
            }
            sol.quadric_coeffs.push_back(std::move(coeffs));
        }
    }
    return sol;
}

bool monge_quadrics_vanish_on_samples(const ParamVariety& X,
                                      const MongeSolution& sol, Rng& rng,
                                      int samples, long height) {
    if (sol.quadric_coeffs.empty()) return false;
    const std::size_t NA = X.ambient_dim + 1;
    for (int t = 0; t < samples; ++t) {
        RatVec s = rng.next_rat_vector(X.source_dim, height);
        RatVec lift = X.lift_at(s);
        RatVec adapted = sol.frame_inv.apply(lift);
        for (const auto& coeffs : sol.quadric_coeffs) {
            Rat acc = 0;
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                if (sgn(coeffs[i]) == 0) continue;
                Rat term = coeffs[i];
                const Expo& e = sol.quadric_monomials[i];
                for (std::size_t v = 0; v < NA; ++v)
                    for (unsigned rep = 0; rep < e[v]; ++rep)
                        term *= adapted[v];
                acc += term;
            }
            if (sgn(acc) != 0) return false;
        }
    }
    return true;
}

unsigned line_osculation_order(const ParamVariety& X, const RatVec& point,
                               const RatVec& v, unsigned maxk) {
    const unsigned jet_cap = std::min<unsigned>(maxk, 6);
    JetTower tower = jet_tower(X, point, std::max(2u, jet_cap));
    unsigned order = 1;
    for (unsigned k = 2; k <= jet_cap; ++k) {
        std::vector<RatVec> args(k, v);
        bool vanish = true;
        for (std::size_t mu = 0; mu < tower.normal_dim && vanish; ++mu)
            vanish = sgn(tower.tensor(mu, k, args)) == 0;
        if (!vanish) return order;
        order = k;
    }
    if (order == jet_cap && maxk > jet_cap &&
        line_contained(X, point, v) == Containment::contained)
        return maxk;
    return order;
}

Containment line_contained(const ParamVariety& X, const RatVec& point,
                           const RatVec& v) {
    if (!X.quadric_cut) return Containment::undecidable;
    const unsigned stabilized = 2 * X.max_degree + 1;
    OscReport osc = osculating_space(X, point, 2, stabilized, true);
    // the affine tangent line through the lifted point in direction d lift(v)
    RatVec base = X.lift_at(point);
    RatVec dir(X.ambient_dim + 1, Rat(0));
    for (std::size_t i = 0; i < X.ambient_dim; ++i) {
        Rat acc = 0;
        for (std::size_t al = 0; al < X.source_dim; ++al)
            acc += X.chart[i].derivative(al).eval(point) * v[al];
        dir[i + 1] = acc;
    }
    for (const auto& coeffs : osc.basis) {
        // P(base + t dir) must vanish identically in t: degree-2 polynomial
        RatVec tcoeffs(3, Rat(0));
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            if (sgn(coeffs[i]) == 0) continue;
            const Expo& e = osc.monomials[i];
            // expand the quadratic monomial on base + t dir
            std::vector<std::size_t> vars;
            for (std::size_t x = 0; x <= X.ambient_dim; ++x)
                for (unsigned rep = 0; rep < e[x]; ++rep) vars.push_back(x);
            // (base_a + t dir_a)(base_b + t dir_b)
            const std::size_t va = vars[0], vb = vars[1];
            tcoeffs[0] += coeffs[i] * base[va] * base[vb];
            tcoeffs[1] += coeffs[i] * (base[va] * dir[vb] + dir[va] * base[vb]);
            tcoeffs[2] += coeffs[i] * dir[va] * dir[vb];
        }
        for (const auto& c : tcoeffs)
            if (sgn(c) != 0) return Containment::not_contained;
    }
    return Containment::contained;
}

MaximalRankReport maximal_rank_report(const ParamVariety& X,
                                      const RatVec& point,
                                      const std::vector<RatVec>& plane,
                                      unsigned m) {
    if (m < 3) throw Error("osc", "maximal_rank_report", "need m >= 3");
    JetTower tower = jet_tower(X, point, std::min<unsigned>(m, 6));
    const std::size_t n = tower.tangent_dim;
    const std::size_t a = tower.normal_dim;
    const std::size_t k = plane.size();

    MaximalRankReport report;
    report.plane_dim = k;

    // precondition: the plane lies inside the vanishing conditions up to m
    report.base_condition_ok = true;
    for (unsigned j = 2; j <= std::min<unsigned>(m, tower.order); ++j) {
        // all mixed tuples of basis vectors, with repetition
        std::vector<std::size_t> tuple(j, 0);
        while (true) {
            std::vector<RatVec> args;
            for (auto t : tuple) args.push_back(plane[t]);
            for (std::size_t mu = 0; mu < a; ++mu)
                if (sgn(tower.tensor(mu, j, args)) != 0)
                    report.base_condition_ok = false;
            std::size_t pos = j;
            while (pos > 0 && tuple[pos - 1] == k - 1) --pos;
            if (pos == 0) break;
            ++tuple[pos - 1];
            for (std::size_t q = pos; q < j; ++q) tuple[q] = tuple[pos - 1];
        }
    }

    // complement directions
    std::vector<RatVec> complement;
    {
        std::vector<RatVec> span = plane;
        for (std::size_t e = 0; e < n && span.size() < n; ++e) {
            RatVec unit(n, Rat(0));
            unit[e] = 1;
            auto tentative = span;
            tentative.push_back(unit);
            if (rank_of_span(tentative) == span.size() + 1) {
                span.push_back(unit);
                complement.push_back(unit);
            }
        }
    }
    const std::size_t target = k * (n - k);

    // stacked level matrices; incremental ranks
    MatRat stacked(0, target);
    std::size_t prior_rank = 0;
    for (unsigned j = 2; j + 1 <= m && j <= tower.order; ++j) {
        // rows (mu, multiset of size j from the plane basis)
        std::vector<std::vector<std::size_t>> tuples;
        std::vector<std::size_t> tuple(j, 0);
        while (true) {
            tuples.push_back(tuple);
            std::size_t pos = j;
            while (pos > 0 && tuple[pos - 1] == k - 1) --pos;
            if (pos == 0) break;
            ++tuple[pos - 1];
            for (std::size_t q = pos; q < j; ++q) tuple[q] = tuple[pos - 1];
        }
        MatRat level(a * tuples.size(), target);
        for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
            for (std::size_t mu = 0; mu < a; ++mu) {
                const std::size_t row = ti * a + mu;
                for (std::size_t xi = 0; xi < k; ++xi) {
                    for (std::size_t sg = 0; sg < n - k; ++sg) {
                        // coefficient of the unknown u^sigma_xi
                        Rat acc = 0;
                        for (std::size_t t = 0; t < j; ++t) {
                            if (tuples[ti][t] != xi) continue;
                            std::vector<RatVec> args;
                            for (std::size_t q = 0; q < j; ++q)
                                if (q != t) args.push_back(plane[tuples[ti][q]]);
                            args.push_back(complement[sg]);
                            acc += tower.tensor(mu, j, args);
                        }
                        level(row, xi * (n - k) + sg) = acc;
                    }
                }
            }
        }
        stacked = stacked.stacked(level);
        std::size_t new_rank = rank_exact(stacked);
        RankLevel entry;
        entry.level = j;
        entry.incremental = new_rank - prior_rank;
        // expected contribution of level j, capped by what remains
        std::size_t binom = 1;
        for (unsigned t = 0; t < j; ++t) binom = binom * (k + t) / (t + 1);
        entry.expected = std::min(a * binom, target - prior_rank);
        entry.maximal = entry.incremental == entry.expected;
        report.levels.push_back(entry);
        prior_rank = new_rank;
    }

    // a [ C(k+m-1, m-1) - k - 1 ] >= k (n - k)
    std::size_t big_binom = 1;
    for (unsigned t = 0; t + 1 < m; ++t)
        big_binom = big_binom * (k + 1 + t) / (t + 1);
    report.inequality_holds =
        big_binom >= k + 1 && a * (big_binom - k - 1) >= target;
    return report;
}

}  // namespace pdgeo
