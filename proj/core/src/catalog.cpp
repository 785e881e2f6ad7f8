#include "pdgeo/catalog.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "pdgeo/error.hpp"
#include "pdgeo/matrix.hpp"

namespace pdgeo {

RatVec ParamVariety::lift_at(const RatVec& point) const {
    RatVec v(ambient_dim + 1);
    v[0] = 1;
    for (std::size_t i = 0; i < ambient_dim; ++i) v[i + 1] = chart[i].eval(point);
    return v;
}

MatRat ParamVariety::tangent_frame_at(const RatVec& point) const {
    MatRat frame(source_dim + 1, ambient_dim + 1);
    RatVec lift = lift_at(point);
    for (std::size_t j = 0; j <= ambient_dim; ++j) frame(0, j) = lift[j];
    for (std::size_t a = 0; a < source_dim; ++a) {
        frame(a + 1, 0) = 0;
        for (std::size_t i = 0; i < ambient_dim; ++i)
            frame(a + 1, i + 1) = chart[i].derivative(a).eval(point);
    }
    return frame;
}

MatRat ParamVariety::jacobian_at(const RatVec& point) const {
    MatRat jac(ambient_dim, source_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i)
        for (std::size_t a = 0; a < source_dim; ++a)
            jac(i, a) = chart[i].derivative(a).eval(point);
    return jac;
}

bool ParamVariety::point_is_general(const RatVec& point) const {
    return rank_exact(jacobian_at(point)) == source_dim;
}

RatVec ParamVariety::general_point(Rng& rng, long height, int retries) const {
    for (int t = 0; t < retries; ++t) {
        RatVec p = rng.next_rat_vector(source_dim, height);
        if (point_is_general(p)) return p;
    }
    throw Error("catalog", "general_point",
                "no general point found for " + name + " (retries exhausted)");
}

std::size_t ParamVariety::generic_jacobian_rank(Rng& rng, int samples,
                                                long height) const {
    std::size_t best = 0;
    for (int t = 0; t < samples; ++t) {
        RatVec p = rng.next_rat_vector(source_dim, height);
        best = std::max(best, rank_exact(jacobian_at(p)));
        if (best == std::min(source_dim, ambient_dim)) break;
    }
    return best;
}

RatVec CompAlgebra::multiply(const RatVec& u, const RatVec& v) const {
    assert(u.size() == dim && v.size() == dim);
    RatVec out(dim, Rat(0));
    for (std::size_t i = 0; i < dim; ++i) {
        if (sgn(u[i]) == 0) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            if (sgn(v[j]) == 0) continue;
            const RatVec& sc = mul[i][j];
            for (std::size_t k = 0; k < dim; ++k)
                if (sgn(sc[k]) != 0) out[k] += u[i] * v[j] * sc[k];
        }
    }
    return out;
}

RatVec CompAlgebra::conjugate(const RatVec& u) const {
    RatVec out = u;
    for (std::size_t i = 1; i < dim; ++i) out[i] = -out[i];
    return out;
}

PolyVec CompAlgebra::multiply_poly(const PolyVec& u, const PolyVec& v) const {
    assert(u.size() == dim && v.size() == dim);
    const std::size_t nvars = u.front().nvars();
    PolyVec out(dim, MPoly(nvars));
    for (std::size_t i = 0; i < dim; ++i) {
        if (u[i].is_zero()) continue;
        for (std::size_t j = 0; j < dim; ++j) {
            if (v[j].is_zero()) continue;
            MPoly prod = u[i] * v[j];
            const RatVec& sc = mul[i][j];
            for (std::size_t k = 0; k < dim; ++k)
                if (sgn(sc[k]) != 0) out[k] = out[k] + prod * sc[k];
        }
    }
    return out;
}

PolyVec CompAlgebra::conjugate_poly(const PolyVec& u) const {
    PolyVec out = u;
    for (std::size_t i = 1; i < dim; ++i) out[i] = -out[i];
    return out;
}

namespace {

void monomials_of_degree(std::size_t nvars, unsigned d, std::vector<Expo>& out) {
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

[[maybe_unused]] std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

ParamVariety veronese(std::size_t n, unsigned d) {
    if (n < 1 || d < 1) throw Error("catalog", "veronese", "need n >= 1, d >= 1");
    ParamVariety X;
    X.name = "veronese:" + std::to_string(n) + "," + std::to_string(d);
    X.source_dim = n;
    X.max_degree = d;
    X.quadric_cut = true;
    for (unsigned deg = 1; deg <= d; ++deg) {
        std::vector<Expo> exps;
        monomials_of_degree(n, deg, exps);
        for (const auto& e : exps)
            X.chart.push_back(MPoly::monomial(n, e, Rat(1)));
    }
    X.ambient_dim = X.chart.size();
    assert(X.ambient_dim + 1 == binom(n + d, d));
    return X;
}

ParamVariety segre(const std::vector<std::size_t>& dims) {
    if (dims.empty()) throw Error("catalog", "segre", "need at least one factor");
    for (auto d : dims)
        if (d < 1) throw Error("catalog", "segre", "each factor dim must be >= 1");
    ParamVariety X;
    {
        std::ostringstream name;
        name << "segre:";
        for (std::size_t i = 0; i < dims.size(); ++i)
            name << (i ? "," : "") << dims[i];
        X.name = name.str();
    }
    const std::size_t n = std::accumulate(dims.begin(), dims.end(), std::size_t{0});
    X.source_dim = n;
    X.max_degree = static_cast<unsigned>(dims.size());
    X.quadric_cut = true;
    // variable offsets per factor
    std::vector<std::size_t> offset(dims.size() + 1, 0);
    for (std::size_t f = 0; f < dims.size(); ++f)
        offset[f + 1] = offset[f] + dims[f];
    // all index tuples (j_1,...,j_r), j_f in 0..dims[f], skipping all-zero
    std::vector<std::size_t> tuple(dims.size(), 0);
    while (true) {
        // advance mixed-radix counter
        std::size_t f = dims.size();
        while (f > 0) {
            --f;
            if (tuple[f] < dims[f]) {
                ++tuple[f];
                std::fill(tuple.begin() + f + 1, tuple.end(), 0);
                break;
            }
            if (f == 0) {
                X.ambient_dim = X.chart.size();
                return X;
            }
        }
        MPoly coord = MPoly::constant(n, 1);
        for (std::size_t g = 0; g < dims.size(); ++g)
            if (tuple[g] > 0)
                coord = coord * MPoly::variable(n, offset[g] + tuple[g] - 1);
        X.chart.push_back(coord);
    }
}

ParamVariety grassmannian(std::size_t k, std::size_t m) {
    if (k < 1 || k >= m)
        throw Error("catalog", "grassmannian", "need 1 <= k < m");
    ParamVariety X;
    X.name = "grassmannian:" + std::to_string(k) + "," + std::to_string(m);
    const std::size_t n = k * (m - k);
    X.source_dim = n;
    X.max_degree = static_cast<unsigned>(std::min(k, m - k));
    X.quadric_cut = true;
    // variables: A[i][j], i < k, j < m-k, row-major
    auto var = [&](std::size_t i, std::size_t j) {
        return MPoly::variable(n, i * (m - k) + j);
    };
    // Plucker chart of [I_k | A]: one k x k minor per column subset
    std::vector<std::size_t> cols(k);
    std::iota(cols.begin(), cols.end(), 0);
    while (true) {
        bool leading = true;
        for (std::size_t i = 0; i < k; ++i)
            if (cols[i] != i) leading = false;
        if (!leading) {
            std::vector<std::vector<MPoly>> minor(k, std::vector<MPoly>(k));
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t c = 0; c < k; ++c) {
                    if (cols[c] < k)
                        minor[r][c] = MPoly::constant(n, cols[c] == r ? 1 : 0);
                    else
                        minor[r][c] = var(r, cols[c] - k);
                }
            X.chart.push_back(det_poly(minor));
        }
        // next subset
        std::size_t i = k;
        while (i > 0 && cols[i - 1] == m - k + i - 1) --i;
        if (i == 0) break;
        ++cols[i - 1];
        for (std::size_t j = i; j < k; ++j) cols[j] = cols[j - 1] + 1;
    }
    X.ambient_dim = X.chart.size();
    assert(X.ambient_dim + 1 == binom(m, k));
    return X;
}

namespace {

// Exterior-algebra element with polynomial coefficients, indexed by subset
// masks of {0..m-1}.
using ExtElem = std::map<std::uint32_t, MPoly>;

int wedge_sign(std::uint32_t a, std::uint32_t b) {
    // (-1)^{# pairs (i in a, j in b) with i > j}
    int crossings = 0;
    for (std::uint32_t bits = b; bits; bits &= bits - 1) {
        std::uint32_t j = bits & ~(bits - 1);  // lowest set bit of b
        std::uint32_t higher = a & ~(j | (j - 1));
        crossings += __builtin_popcount(higher);
    }
    return crossings % 2 == 0 ? 1 : -1;
}

ExtElem wedge(const ExtElem& x, const ExtElem& y, std::size_t nvars) {
    ExtElem out;
    for (const auto& [ma, pa] : x) {
        for (const auto& [mb, pb] : y) {
            if (ma & mb) continue;
            MPoly prod = pa * pb;
            if (wedge_sign(ma, mb) < 0) prod = -prod;
            auto [it, inserted] = out.emplace(ma | mb, prod);
            if (!inserted) it->second = it->second + prod;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.is_zero())
            it = out.erase(it);
        else
            ++it;
    }
    (void)nvars;
    return out;
}

}  // namespace

ParamVariety spinor_variety(std::size_t m) {
    if (m < 3) throw Error("catalog", "spinor", "need m >= 3");
    ParamVariety X;
    X.name = "spinor:" + std::to_string(m);
    const std::size_t n = m * (m - 1) / 2;
    X.source_dim = n;
    X.max_degree = static_cast<unsigned>(m / 2);
    X.quadric_cut = true;
    // variables z_{ij}, i < j, lexicographic
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> zvar;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) zvar[{i, j}] = idx++;
    // omega = sum z_ij e_i ^ e_j; chart = exp^(omega) over even subsets.
    ExtElem omega;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            omega[(1u << i) | (1u << j)] = MPoly::variable(n, zvar[{i, j}]);
    ExtElem expw;
    expw[0] = MPoly::constant(n, 1);
    ExtElem power = expw;
    Rat factorial = 1;
    for (std::size_t r = 1; r <= m / 2; ++r) {
        power = wedge(power, omega, n);
        factorial *= Rat(static_cast<long>(r));
        for (const auto& [mask, poly] : power) {
            MPoly scaled = poly * (1 / factorial);
            auto [it, inserted] = expw.emplace(mask, scaled);
            if (!inserted) it->second = it->second + scaled;
        }
    }
    // coordinates: even-cardinality subsets in (size, lex-on-mask) order,
    // skipping the empty set, which is the chart's 1
    std::vector<std::uint32_t> masks;
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask)
        if (__builtin_popcount(mask) % 2 == 0) masks.push_back(mask);
    std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    for (auto mask : masks) {
        auto it = expw.find(mask);
        X.chart.push_back(it == expw.end() ? MPoly(n) : it->second);
    }
    X.ambient_dim = X.chart.size();
    assert(X.ambient_dim + 1 == (1u << (m - 1)));
    return X;
}

CompAlgebra comp_algebra(std::size_t d) {
    if (d != 1 && d != 2 && d != 4 && d != 8)
        throw Error("catalog", "comp_algebra", "dimension must be 1, 2, 4 or 8");
    CompAlgebra alg;
    alg.dim = 1;
    alg.mul = {{RatVec{Rat(1)}}};
    while (alg.dim < d) {
        // Cayley-Dickson doubling: (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c))
        const std::size_t k = alg.dim;
        CompAlgebra next;
        next.dim = 2 * k;
        next.mul.assign(next.dim, std::vector<RatVec>(next.dim, RatVec(next.dim, Rat(0))));
        auto embed = [&](const RatVec& v, bool second_half) {
            RatVec out(next.dim, Rat(0));
            for (std::size_t t = 0; t < k; ++t) out[second_half ? k + t : t] = v[t];
            return out;
        };
        auto basis = [&](std::size_t i) {
            RatVec v(k, Rat(0));
            v[i] = 1;
            return v;
        };
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                next.mul[i][j] = embed(alg.mul[i][j], false);
                next.mul[i][k + j] = embed(alg.multiply(basis(j), basis(i)), true);
                next.mul[k + i][j] =
                    embed(alg.multiply(basis(i), alg.conjugate(basis(j))), true);
                RatVec neg = alg.multiply(alg.conjugate(basis(j)), basis(i));
                for (auto& q : neg) q = -q;
                next.mul[k + i][k + j] = embed(neg, false);
            }
        }
        alg = std::move(next);
    }
    return alg;
}

ParamVariety severi(std::size_t d) {
    CompAlgebra alg = comp_algebra(d);
    ParamVariety X;
    X.name = "severi:" + std::to_string(d);
    const std::size_t n = 2 * d;
    X.source_dim = n;
    X.max_degree = 2;
    X.quadric_cut = true;
    PolyVec u1(d), u2(d);
    for (std::size_t i = 0; i < d; ++i) {
        u1[i] = MPoly::variable(n, i);
        u2[i] = MPoly::variable(n, d + i);
    }
    // chart: (u1, u2, u3 = conj(u2) u1, r2 = u1 conj(u1), r3 = u2 conj(u2))
    for (const auto& p : u1) X.chart.push_back(p);
    for (const auto& p : u2) X.chart.push_back(p);
    PolyVec u3 = alg.multiply_poly(alg.conjugate_poly(u2), u1);
    for (const auto& p : u3) X.chart.push_back(p);
    PolyVec r2 = alg.multiply_poly(u1, alg.conjugate_poly(u1));
    PolyVec r3 = alg.multiply_poly(u2, alg.conjugate_poly(u2));
    for (std::size_t i = 1; i < d; ++i) {
        if (!r2[i].is_zero() || !r3[i].is_zero())
            throw Error("catalog", "severi",
                        "norm form has nonzero imaginary part");
    }
    X.chart.push_back(r2[0]);
    X.chart.push_back(r3[0]);
    X.ambient_dim = X.chart.size();
    assert(X.ambient_dim == 3 * d + 2);
    return X;
}

ParamVariety graph_variety(std::size_t n, const PolyVec& polys) {
    ParamVariety X;
    X.name = "graph:" + std::to_string(n);
    X.source_dim = n;
    X.expected_smooth = true;
    PolyVec normalized;
    unsigned maxdeg = 1;
    for (const auto& p : polys) {
        if (p.nvars() != n)
            throw Error("catalog", "graph_variety", "variable count mismatch");
        // drop constant and linear parts so the chart is centered at the origin
        MPoly q = p;
        q.add_term(Expo(n, 0), -p.constant_term());
        for (std::size_t v = 0; v < n; ++v) {
            Expo e(n, 0);
            e[v] = 1;
            q.add_term(e, -p.coeff(e));
        }
        maxdeg = std::max(maxdeg, q.degree());
        normalized.push_back(std::move(q));
    }
    for (std::size_t v = 0; v < n; ++v)
        X.chart.push_back(MPoly::variable(n, v));
    for (const auto& q : normalized) X.chart.push_back(q);
    X.ambient_dim = X.chart.size();
    X.max_degree = maxdeg;
    return X;
}

ParamVariety tangent_developable(const ParamVariety& curve) {
    if (curve.source_dim != 1)
        throw Error("catalog", "tangent_developable", "source must be a curve");
    ParamVariety X;
    X.name = "tandev:" + curve.name;
    X.source_dim = 2;
    X.ambient_dim = curve.ambient_dim;
    X.max_degree = curve.max_degree;
    X.expected_smooth = false;
    // (t, s) -> phi(t) + s phi'(t) in the affine chart of the lift
    std::vector<MPoly> subs{MPoly::variable(2, 0)};  // t
    MPoly s = MPoly::variable(2, 1);
    for (std::size_t i = 0; i < curve.ambient_dim; ++i) {
        MPoly phi = curve.chart[i].substitute(subs);
        MPoly dphi = curve.chart[i].derivative(0).substitute(subs);
        X.chart.push_back(phi + s * dphi);
    }
    Rng rng(0x7ad5eu);
    if (X.generic_jacobian_rank(rng) < 2)
        throw Error("catalog", "tangent_developable", "image dimension deficient");
    return X;
}

ParamVariety cone_over(const ParamVariety& x) {
    ParamVariety X;
    X.name = "cone:" + x.name;
    X.source_dim = x.source_dim + 1;
    X.max_degree = std::max(1u, x.max_degree);
    X.expected_smooth = false;
    const std::size_t n = X.source_dim;
    std::vector<MPoly> subs;
    for (std::size_t v = 0; v + 1 < n; ++v) subs.push_back(MPoly::variable(n, v));
    for (std::size_t i = 0; i < x.ambient_dim; ++i)
        X.chart.push_back(x.chart[i].substitute(subs));
    X.chart.push_back(MPoly::variable(n, n - 1));  // vertex coordinate
    X.ambient_dim = X.chart.size();
    return X;
}

ParamVariety point_variety(const RatVec& affine_coords) {
    ParamVariety X;
    X.name = "point";
    X.source_dim = 0;
    X.ambient_dim = affine_coords.size();
    for (const auto& c : affine_coords)
        X.chart.push_back(MPoly::constant(0, c));
    X.max_degree = 0;
    return X;
}

// ---------------------------------------------------------------------------
// variety-spec mini-language

namespace {

std::vector<long> parse_int_list(const std::string& s, const char* where) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stol(item));
        } catch (...) {
            throw Error("catalog", where, "bad integer '" + item + "'");
        }
    }
    if (out.empty()) throw Error("catalog", where, "empty argument list");
    return out;
}

// minimal expression parser: rationals, variables x1..xn, + - * ^ ( )
class PolyParser {
public:
    PolyParser(std::string text, std::size_t nvars)
        : text_(std::move(text)), nvars_(nvars) {}

    MPoly parse() {
        MPoly p = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw Error("catalog", "parse_poly", "trailing input in polynomial");
        return p;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    MPoly expr() {
        MPoly acc = term();
        while (true) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                return acc;
        }
    }
    MPoly term() {
        MPoly acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }
    MPoly factor() {
        MPoly base = atom();
        if (eat('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_)
                throw Error("catalog", "parse_poly", "missing exponent");
            unsigned e = std::stoul(text_.substr(start, pos_ - start));
            MPoly acc = MPoly::constant(nvars_, 1);
            for (unsigned i = 0; i < e; ++i) acc = acc * base;
            return acc;
        }
        return base;
    }
    MPoly atom() {
        skip_ws();
        if (eat('(')) {
            MPoly inner = expr();
            if (!eat(')')) throw Error("catalog", "parse_poly", "missing ')'");
            return inner;
        }
        if (eat('-')) return -factor();
        if (pos_ < text_.size() && text_[pos_] == 'x') {
            ++pos_;
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            if (start == pos_)
                throw Error("catalog", "parse_poly", "missing variable index");
            std::size_t idx = std::stoul(text_.substr(start, pos_ - start));
            if (idx < 1 || idx > nvars_)
                throw Error("catalog", "parse_poly", "variable index out of range");
            return MPoly::variable(nvars_, idx - 1);
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
            ++pos_;
        if (start == pos_) throw Error("catalog", "parse_poly", "bad token");
        return MPoly::constant(nvars_, rat_from_string(text_.substr(start, pos_ - start)));
    }

    std::string text_;
    std::size_t nvars_;
    std::size_t pos_ = 0;
};

ParamVariety parse_graph_spec(const std::string& arg) {
    // either "n;poly;poly;..." inline or a path to a file with the same
    // content on separate lines
    std::string body = arg;
    if (arg.find(';') == std::string::npos) {
        std::ifstream in(arg);
        if (!in) throw Error("catalog", "parse_variety_spec",
                             "cannot open graph file '" + arg + "'");
        std::ostringstream joined;
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (!first) joined << ';';
            joined << line;
            first = false;
        }
        body = joined.str();
    }
    std::stringstream ss(body);
    std::string item;
    if (!std::getline(ss, item, ';'))
        throw Error("catalog", "parse_variety_spec", "empty graph spec");
    std::size_t n = std::stoul(item);
    PolyVec polys;
    while (std::getline(ss, item, ';'))
        polys.push_back(PolyParser(item, n).parse());
    if (polys.empty())
        throw Error("catalog", "parse_variety_spec", "graph spec has no polynomials");
    return graph_variety(n, polys);
}

}  // namespace

ParamVariety parse_variety_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw Error("catalog", "parse_variety_spec",
                    "expected '<kind>:<args>', got '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    if (kind == "veronese") {
        auto v = parse_int_list(arg, "veronese");
        if (v.size() != 2) throw Error("catalog", "veronese", "expected n,d");
        return veronese(static_cast<std::size_t>(v[0]), static_cast<unsigned>(v[1]));
    }
    if (kind == "segre") {
        auto v = parse_int_list(arg, "segre");
        std::vector<std::size_t> dims(v.begin(), v.end());
        return segre(dims);
    }
    if (kind == "grassmannian") {
        auto v = parse_int_list(arg, "grassmannian");
        if (v.size() != 2) throw Error("catalog", "grassmannian", "expected k,m");
        return grassmannian(static_cast<std::size_t>(v[0]),
                            static_cast<std::size_t>(v[1]));
    }
    if (kind == "spinor") {
        auto v = parse_int_list(arg, "spinor");
        if (v.size() != 1) throw Error("catalog", "spinor", "expected m");
        return spinor_variety(static_cast<std::size_t>(v[0]));
    }
    if (kind == "severi") {
        auto v = parse_int_list(arg, "severi");
        if (v.size() != 1) throw Error("catalog", "severi", "expected d");
        return severi(static_cast<std::size_t>(v[0]));
    }
    if (kind == "tandev") return tangent_developable(parse_variety_spec(arg));
    if (kind == "cone") return cone_over(parse_variety_spec(arg));
    if (kind == "graph") return parse_graph_spec(arg);
    throw Error("catalog", "parse_variety_spec", "unknown kind '" + kind + "'");
}

}  // namespace pdgeo
