#include "pdgeo/jets.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

#include "pdgeo/error.hpp"
#include "pdgeo/series.hpp"

namespace pdgeo {

MatRat QuadricSystem::combination(const RatVec& coeffs) const {
    assert(coeffs.size() == quadrics.size());
    MatRat acc(tangent_dim, tangent_dim);
    for (std::size_t i = 0; i < quadrics.size(); ++i) {
        if (sgn(coeffs[i]) == 0) continue;
        acc = acc + quadrics[i].scaled(coeffs[i]);
    }
    return acc;
}

QuadricSystem QuadricSystem::subsystem(const std::vector<RatVec>& coeffs,
                                       const std::string& label_prefix) const {
    QuadricSystem out;
    out.tangent_dim = tangent_dim;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        out.quadrics.push_back(combination(coeffs[i]));
        out.labels.push_back(label_prefix + std::to_string(i));
    }
    return out;
}

namespace {

// Hessian matrix of a quadratic polynomial (exactly its degree-2 part).
MatRat hessian_of(const MPoly& p2, std::size_t n) {
    MatRat h(n, n);
    for (const auto& [e, c] : p2.terms()) {
        std::size_t first = n, second = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (e[v] == 2) {
                first = second = v;
                break;
            }
            if (e[v] == 1) {
                if (first == n)
                    first = v;
                else
                    second = v;
            }
        }
        if (first == second) {
            h(first, first) = c * 2;
        } else {
            h(first, second) = c;
            h(second, first) = c;
        }
    }
    return h;
}

// Full polarization: F(v_1..v_k) = sum_{S != empty} (-1)^{k-|S|} p(v_S),
// so that F(v,..,v) = k! p(v) for homogeneous p of degree k.
Rat polarize(const MPoly& p, const std::vector<RatVec>& args) {
    const std::size_t k = args.size();
    const std::size_t n = args.empty() ? p.nvars() : args.front().size();
    Rat acc = 0;
    for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
        RatVec sum(n, Rat(0));
        for (std::size_t i = 0; i < k; ++i) {
            if (!(mask & (std::size_t{1} << i))) continue;
            for (std::size_t j = 0; j < n; ++j) sum[j] += args[i][j];
        }
        Rat value = p.eval(sum);
        if ((k - static_cast<unsigned>(__builtin_popcountll(mask))) % 2 == 0)
            acc += value;
        else
            acc -= value;
    }
    return acc;
}

}  // namespace

MatRat JetTower::hessian(std::size_t mu) const {
    return hessian_of(parts[mu][2], tangent_dim);
}

QuadricSystem JetTower::second_ff() const {
    QuadricSystem A;
    A.tangent_dim = tangent_dim;
    for (std::size_t mu = 0; mu < normal_dim; ++mu) {
        A.quadrics.push_back(hessian(mu));
        A.labels.push_back("q" + std::to_string(mu));
    }
    return A;
}

Rat JetTower::tensor(std::size_t mu, unsigned k,
                     const std::vector<RatVec>& args) const {
    assert(args.size() == k);
    assert(k <= order);
    return polarize(parts[mu][k], args);
}

RatVec JetTower::tensor_all(unsigned k, const std::vector<RatVec>& args) const {
    RatVec out(normal_dim);
    for (std::size_t mu = 0; mu < normal_dim; ++mu) out[mu] = tensor(mu, k, args);
    return out;
}

std::vector<MPoly> JetTower::fundamental_form_span(unsigned k) const {
    assert(k >= 2 && k <= order);
    const auto& domain = kernels[k - 2];
    std::vector<MPoly> forms;
    for (const auto& lambda : domain) {
        MPoly form(tangent_dim);
        for (std::size_t mu = 0; mu < normal_dim; ++mu)
            if (sgn(lambda[mu]) != 0) form = form + parts[mu][k] * lambda[mu];
        if (!form.is_zero()) forms.push_back(form);
    }
    if (forms.empty()) return forms;
    // reduce to an independent subset
    std::vector<Expo> monomials;
    {
        std::map<Expo, std::size_t> seen;
        for (const auto& f : forms)
            for (const auto& [e, c] : f.terms()) seen.emplace(e, seen.size());
        for (const auto& [e, idx] : seen) monomials.push_back(e);
    }
    std::vector<MPoly> basis;
    std::vector<RatVec> rows;
    for (const auto& f : forms) {
        RatVec row(monomials.size());
        for (std::size_t i = 0; i < monomials.size(); ++i)
            row[i] = f.coeff(monomials[i]);
        if (!in_span(rows, row)) {
            rows.push_back(row);
            basis.push_back(f);
        }
    }
    return basis;
}

JetTower jet_tower(const ParamVariety& X, const RatVec& point, unsigned order,
                   const MatRat* ambient_change) {
    if (order < 2 || order > 6)
        throw Error("jets", "jet_tower", "order must lie in [2, 6]");
    if (!X.point_is_general(point))
        throw Error("jets", "jet_tower", "point not general");

    const std::size_t n = X.source_dim;
    const std::size_t N = X.ambient_dim;
    const std::size_t a = N - n;

    // recentered homogeneous lift w(x) = M (1, chart(point + x))
    PolyVec lift(N + 1);
    lift[0] = MPoly::constant(n, 1);
    for (std::size_t i = 0; i < N; ++i) lift[i + 1] = X.chart[i].shifted(point);
    if (ambient_change != nullptr) {
        assert(ambient_change->rows() == N + 1 &&
               ambient_change->cols() == N + 1);
        PolyVec mixed(N + 1, MPoly(n));
        for (std::size_t i = 0; i <= N; ++i)
            for (std::size_t j = 0; j <= N; ++j) {
                const Rat& c = (*ambient_change)(i, j);
                if (sgn(c) != 0) mixed[i] = mixed[i] + lift[j] * c;
            }
        lift = std::move(mixed);
    }

    // adapted ambient frame: w(0), its partials, then a greedy completion by
    // coordinate vectors
    MatRat frame(N + 1, N + 1);
    RatVec origin(n, Rat(0));
    for (std::size_t i = 0; i <= N; ++i) frame(i, 0) = lift[i].constant_term();
    for (std::size_t al = 0; al < n; ++al)
        for (std::size_t i = 0; i <= N; ++i)
            frame(i, al + 1) = lift[i].derivative(al).eval(origin);
    {
        std::vector<RatVec> cols;
        for (std::size_t c = 0; c <= n; ++c) cols.push_back(frame.col(c));
        std::size_t next = n + 1;
        for (std::size_t e = 0; e <= N && next <= N; ++e) {
            RatVec unit(N + 1, Rat(0));
            unit[e] = 1;
            if (in_span(cols, unit)) continue;
            cols.push_back(unit);
            for (std::size_t i = 0; i <= N; ++i) frame(i, next) = unit[i];
            ++next;
        }
        if (next != N + 1)
            throw Error("jets", "jet_tower", "frame completion failed");
    }

    MatRat frame_inv(N + 1, N + 1);
    {
        MatRat aug(N + 1, 2 * (N + 1));
        for (std::size_t i = 0; i <= N; ++i) {
            for (std::size_t j = 0; j <= N; ++j) aug(i, j) = frame(i, j);
            aug(i, N + 1 + i) = 1;
        }
        std::vector<std::size_t> pivots;
        MatRat r = rref(aug, &pivots);
        if (pivots.size() != N + 1 || pivots.back() != N)
            throw Error("jets", "jet_tower", "ambient frame is singular");
        for (std::size_t i = 0; i <= N; ++i)
            for (std::size_t j = 0; j <= N; ++j)
                frame_inv(i, j) = r(i, N + 1 + j);
    }

    auto table = MonomialTable::get(n, order);
    std::vector<TruncSeries> coords(N + 1, TruncSeries(table));
    for (std::size_t i = 0; i <= N; ++i) {
        MPoly acc(n);
        for (std::size_t j = 0; j <= N; ++j) {
            const Rat& c = frame_inv(i, j);
            if (sgn(c) != 0) acc = acc + lift[j] * c;
        }
        coords[i] = TruncSeries::from_poly(acc.truncated(order), table);
    }

    // affine chart of the adapted frame
    TruncSeries inv0 = coords[0].reciprocal();
    std::vector<TruncSeries> tangent_coords, normal_coords;
    for (std::size_t al = 1; al <= n; ++al)
        tangent_coords.push_back(coords[al] * inv0);
    for (std::size_t mu = n + 1; mu <= N; ++mu)
        normal_coords.push_back(coords[mu] * inv0);

    // graph form x^mu = f^mu(x^alpha)
    std::vector<TruncSeries> inverse = series_invert_map(tangent_coords);

    JetTower tower;
    tower.variety = X.name;
    tower.base_point = point;
    tower.order = order;
    tower.tangent_dim = n;
    tower.normal_dim = a;
    tower.frame_inv = frame_inv;
    tower.parts.assign(a, std::vector<MPoly>(order + 1, MPoly(n)));
    for (std::size_t mu = 0; mu < a; ++mu) {
        TruncSeries graph = compose(normal_coords[mu], inverse);
        for (unsigned k = 0; k <= order; ++k)
            tower.parts[mu][k] = graph.homogeneous_part(k);
        if (!tower.parts[mu][0].is_zero() || !tower.parts[mu][1].is_zero())
            throw Error("jets", "jet_tower", "graph form has low-order terms");
    }

    // osculating filtration: FF^k on the kernel of the lower forms
    std::vector<RatVec> domain;
    for (std::size_t mu = 0; mu < a; ++mu) {
        RatVec unit(a, Rat(0));
        unit[mu] = 1;
        domain.push_back(unit);
    }
    for (unsigned k = 2; k <= order; ++k) {
        tower.kernels.push_back(domain);
        if (domain.empty()) {
            tower.filtration.push_back(0);
            continue;
        }
        std::vector<Expo> monomials;
        {
            std::map<Expo, std::size_t> seen;
            for (std::size_t mu = 0; mu < a; ++mu)
                for (const auto& [e, c] : tower.parts[mu][k].terms())
                    seen.emplace(e, seen.size());
            for (const auto& [e, idx] : seen) monomials.push_back(e);
        }
        MatRat m(domain.size(), std::max<std::size_t>(monomials.size(), 1));
        for (std::size_t r = 0; r < domain.size(); ++r)
            for (std::size_t cidx = 0; cidx < monomials.size(); ++cidx) {
                Rat acc = 0;
                for (std::size_t mu = 0; mu < a; ++mu)
                    if (sgn(domain[r][mu]) != 0)
                        acc += domain[r][mu] *
                               tower.parts[mu][k].coeff(monomials[cidx]);
                m(r, cidx) = acc;
            }
        tower.filtration.push_back(rank_exact(m));
        // next domain: row combinations of m that vanish (left kernel)
        auto comb = kernel_basis(m.transpose());
        std::vector<RatVec> next;
        for (const auto& c : comb) {
            RatVec lambda(a, Rat(0));
            for (std::size_t r = 0; r < domain.size(); ++r)
                if (sgn(c[r]) != 0)
                    for (std::size_t mu = 0; mu < a; ++mu)
                        lambda[mu] += c[r] * domain[r][mu];
            next.push_back(std::move(lambda));
        }
        domain = std::move(next);
    }
    return tower;
}

QuadricSystem second_ff(const ParamVariety& X, Rng& rng, unsigned height) {
    RatVec p = X.general_point(rng, static_cast<long>(height));
    return jet_tower(X, p, 2).second_ff();
}

std::vector<RatVec> singloc(const QuadricSystem& A) {
    if (A.quadrics.empty()) {
        std::vector<RatVec> all;
        for (std::size_t i = 0; i < A.tangent_dim; ++i) {
            RatVec v(A.tangent_dim, Rat(0));
            v[i] = 1;
            all.push_back(v);
        }
        return all;
    }
    MatRat stacked(0, A.tangent_dim);
    for (const auto& q : A.quadrics) stacked = stacked.stacked(q);
    return kernel_basis(stacked);
}

std::size_t generic_quadric_rank(const QuadricSystem& A, Rng& rng, int trials) {
    if (A.quadrics.empty())
        throw Error("jets", "generic_quadric_rank", "empty system");
    std::size_t best = 0;
    for (int t = 0; t < trials; ++t) {
        RatVec c = rng.next_rat_vector(A.quadrics.size(), 50);
        best = std::max(best, rank_exact(A.combination(c)));
        if (best == A.tangent_dim) break;
    }
    return best;
}

MatRat ii_v_matrix(const QuadricSystem& A, const RatVec& v) {
    MatRat m(A.quadrics.size(), A.tangent_dim);
    for (std::size_t mu = 0; mu < A.quadrics.size(); ++mu) {
        RatVec row = A.quadrics[mu].apply(v);
        for (std::size_t al = 0; al < A.tangent_dim; ++al) m(mu, al) = row[al];
    }
    return m;
}

std::size_t dim_ii_v(const QuadricSystem& A, const RatVec& v) {
    return rank_exact(ii_v_matrix(A, v));
}

std::vector<RatVec> kernel_ii_v(const QuadricSystem& A, const RatVec& v) {
    return kernel_basis(ii_v_matrix(A, v));
}

std::vector<RatVec> ann_v(const QuadricSystem& A, const RatVec& v) {
    return kernel_basis(ii_v_matrix(A, v).transpose());
}

RatVec ii_generic_vector(const QuadricSystem& A, Rng& rng, int samples,
                         long height) {
    RatVec best;
    std::size_t best_dim = 0;
    for (int s = 0; s < samples; ++s) {
        RatVec v = rng.next_rat_vector(A.tangent_dim, height);
        std::size_t d = dim_ii_v(A, v);
        if (best.empty() || d > best_dim) {
            best = v;
            best_dim = d;
        }
    }
    return best;
}

RefinedCubic refined_cubic(const ParamVariety& X, const RatVec& point,
                           const RatVec& v, Rng& rng) {
    JetTower tower = jet_tower(X, point, 3);
    QuadricSystem A = tower.second_ff();

    const std::size_t dv = dim_ii_v(A, v);
    RatVec probe = ii_generic_vector(A, rng);
    if (dim_ii_v(A, probe) > dv)
        throw Error("jets", "refined_cubic", "vector not generic");

    RefinedCubic out;
    out.ann_basis = ann_v(A, v);
    out.ker_iiv_basis = kernel_ii_v(A, v);
    out.sa_basis = singloc(A.subsystem(out.ann_basis, "ann"));
    if (!in_span(out.sa_basis, v))
        throw Error("jets", "refined_cubic",
                    "internal consistency: v not in singloc(Ann(v))");
    out.f3vvv = tower.tensor_all(3, {v, v, v});
    // II_v(T) spanned by the columns of II_v
    std::vector<RatVec> image;
    MatRat iiv = ii_v_matrix(A, v);
    for (std::size_t al = 0; al < A.tangent_dim; ++al) image.push_back(iiv.col(al));
    out.quotient_dim = A.quadrics.size() - rank_of_span(image);
    out.iii_zero = in_span(image, out.f3vvv);
    return out;
}

bool in_prolongation(const QuadricSystem& A, const MPoly& cubic) {
    const std::size_t n = A.tangent_dim;
    auto quad_coords = [&](const MatRat& q) {
        RatVec row;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                row.push_back(i == j ? q(i, i) : q(i, j) * 2);
        return row;
    };
    std::vector<RatVec> span;
    for (const auto& q : A.quadrics) span.push_back(quad_coords(q));
    for (std::size_t g = 0; g < n; ++g) {
        MPoly partial = cubic.derivative(g);
        if (!in_span(span, quad_coords(hessian_of(partial, n)))) return false;
    }
    return true;
}

std::size_t prolongation_dim(const QuadricSystem& A) {
    // Elements sum_{delta,i} c_{delta i} x_delta Q_i of T^* ox A lie in S^3
    // exactly when, for every gamma, the slot quadric equals one third of the
    // gamma-partial of the associated cubic P = sum c_{delta i} x_delta Q_i.
    const std::size_t n = A.tangent_dim;
    if (A.quadrics.empty()) return 0;
    // reduce the (possibly dependent) spanning set to an independent basis
    std::vector<MPoly> qpolys;
    std::vector<RatVec> rows;
    for (const auto& q : A.quadrics) {
        MPoly p(n);
        RatVec row;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                Rat c = (i == j) ? q(i, i) / 2 : q(i, j);
                row.push_back(c);
                if (sgn(c) == 0) continue;
                Expo e(n, 0);
                e[i] += 1;
                e[j] += 1;
                p.add_term(e, c);
            }
        if (!in_span(rows, row)) {
            rows.push_back(row);
            qpolys.push_back(p);
        }
    }
    const std::size_t a = qpolys.size();
    std::map<std::pair<std::size_t, Expo>, std::size_t> row_index;
    std::vector<std::vector<std::pair<std::size_t, Rat>>> cols(n * a);
    auto add_entry = [&](std::size_t gamma, const Expo& e, std::size_t col,
                         const Rat& val) {
        auto key = std::make_pair(gamma, e);
        auto [it, inserted] = row_index.emplace(key, row_index.size());
        cols[col].push_back({it->second, val});
    };
    for (std::size_t delta = 0; delta < n; ++delta) {
        for (std::size_t i = 0; i < a; ++i) {
            const std::size_t col = delta * a + i;
            for (const auto& [e, c] : qpolys[i].terms()) add_entry(delta, e, col, c);
            MPoly xdelta_qi = MPoly::variable(n, delta) * qpolys[i];
            for (std::size_t gamma = 0; gamma < n; ++gamma) {
                MPoly dp = xdelta_qi.derivative(gamma);
                for (const auto& [e, c] : dp.terms())
                    add_entry(gamma, e, col, -c / 3);
            }
        }
    }
    MatRat m(row_index.size(), n * a);
    for (std::size_t col = 0; col < cols.size(); ++col)
        for (const auto& [row, val] : cols[col]) m(row, col) += val;
    return kernel_basis(m).size();
}

}  // namespace pdgeo
