#include "pdgeo/matspaces.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "pdgeo/error.hpp"
#include "pdgeo/poly.hpp"

namespace pdgeo {

MatRat MatrixSpace::at(const RatVec& params) const {
    assert(params.size() == basis.size());
    MatRat acc(rows, cols);
    for (std::size_t p = 0; p < basis.size(); ++p) {
        if (sgn(params[p]) == 0) continue;
        acc = acc + basis[p].scaled(params[p]);
    }
    return acc;
}

void MatrixSpace::validate() const {
    for (const auto& b : basis) {
        if (b.rows() != rows || b.cols() != cols)
            throw Error("matspaces", "validate", name + ": shape mismatch");
        if (symmetry == Symmetry::symmetric && !b.is_symmetric())
            throw Error("matspaces", "validate", name + ": not symmetric");
        if (symmetry == Symmetry::skew && !b.is_skew())
            throw Error("matspaces", "validate", name + ": not skew");
    }
    std::vector<RatVec> flat;
    for (const auto& b : basis) {
        RatVec row;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) row.push_back(b(i, j));
        flat.push_back(row);
    }
    if (rank_of_span(flat) != basis.size())
        throw Error("matspaces", "validate", name + ": dependent basis");
}

namespace {

// Parse a whitespace-separated entry table with tokens 0, eK, -eK.
MatrixSpace from_table(const std::string& name, std::size_t rows,
                       std::size_t cols, std::size_t params, Symmetry symmetry,
                       const char* table) {
    MatrixSpace S;
    S.name = name;
    S.rows = rows;
    S.cols = cols;
    S.symmetry = symmetry;
    S.basis.assign(params, MatRat(rows, cols));
    std::istringstream in(table);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            std::string tok;
            in >> tok;
            if (tok == "0") continue;
            Rat sign = 1;
            std::size_t at = 0;
            if (tok[0] == '-') {
                sign = -1;
                at = 1;
            }
            assert(tok[at] == 'e');
            std::size_t p = std::stoul(tok.substr(at + 1));
            S.basis[p](i, j) = sign;
        }
    S.validate();
    return S;
}

const char* kBI = R"(
e0 0
e1 e0
e2 e1
0  e2
)";

const char* kCII = R"(
 0  e0 e1
-e0  0 e2
-e1 -e2 0
)";

const char* kAI = R"(
0 0 0 0 e0 0
0 0 0 0 e1 e0
0 0 0 0 e2 e1
0 0 0 0 0  e2
e0 e1 e2 0 0 0
0  e0 e1 e2 0 0
)";

const char* kAII = R"(
0   0   0   0   e0  e1
0   0   0  -e0  0   e2
0   0   0  -e1 -e2  0
0  -e0 -e1  0   0   0
e0  0  -e2  0   0   0
e1  e2  0   0   0   0
)";

// The widely reproduced table for A_III carries two sign typos that destroy
// the constant-rank property (no choice of basis signs makes it match the
// wedge construction it comes from; the minimal repair flips two symmetric
// entry pairs). kAIII corrects entries (1,5) and (3,7); the uncorrected
// table is kept as A_III_printed.
const char* kAIII = R"(
0   0   0   0   0   0   0   e0  e1  e2
0   0   0   0   0   e0 -e1  0   0   e3
0   0   0   0  -e0  0  -e2  0  -e3  0
0   0   0   0  -e1 -e2  0   e3  0   0
0   0  -e0 -e1  0   0   0   0   0   e4
0   e0  0  -e2  0   0   0   0  -e4  0
0  -e1 -e2  0   0   0   0  -e4  0   0
e0  0   0   e3  0   0  -e4  0   0   0
e1  0  -e3  0   0  -e4  0   0   0   0
e2  e3  0   0   e4  0   0   0   0   0
)";

const char* kAIIIPrinted = R"(
0   0   0   0   0   0   0   e0  e1  e2
0   0   0   0   0  -e0 -e1  0   0   e3
0   0   0   0  -e0  0  -e2  0  -e3  0
0   0   0   0  -e1 -e2  0  -e3  0   0
0   0  -e0 -e1  0   0   0   0   0   e4
0  -e0  0  -e2  0   0   0   0  -e4  0
0  -e1 -e2  0   0   0   0  -e4  0   0
e0  0   0  -e3  0   0  -e4  0   0   0
e1  0  -e3  0   0  -e4  0   0   0   0
e2  e3  0   0   e4  0   0   0   0   0
)";

const char* kCIV = R"(
0   0   0   0   0   0   0   e0  e1  0
0   0   0   0   0   0   e0  e1  0   e2
0   0   0   0   0  -e0  e1  0   e2  e3
0   0   0   0   e0  e1  0   e2  e3  0
0   0   0  -e0  0   0   e2 -e3  0   0
0   0   e0 -e1  0   0   e3  0   0   0
0  -e0 -e1  0  -e2 -e3  0   0   0   0
-e0 -e1  0  -e2  e3  0   0   0   0   0
-e1  0  -e2 -e3  0   0   0   0   0   0
0  -e2 -e3  0   0   0   0   0   0   0
)";

}  // namespace

MatrixSpace exemplar(const std::string& name) {
    if (name == "B_I")
        return from_table("B_I", 4, 2, 3, Symmetry::general, kBI);
    if (name == "C_II") return from_table("C_II", 3, 3, 3, Symmetry::skew, kCII);
    if (name == "A_I")
        return from_table("A_I", 6, 6, 3, Symmetry::symmetric, kAI);
    if (name == "A_II")
        return from_table("A_II", 6, 6, 3, Symmetry::symmetric, kAII);
    if (name == "A_III")
        return from_table("A_III", 10, 10, 5, Symmetry::symmetric, kAIII);
    if (name == "A_III_printed")
        return from_table("A_III_printed", 10, 10, 5, Symmetry::symmetric,
                          kAIIIPrinted);
    if (name == "C_IV")
        return from_table("C_IV", 10, 10, 4, Symmetry::skew, kCIV);
    if (name == "A_IV") {
        MatrixSpace c = exemplar("C_IV");
        MatrixSpace s = doubled(c, Symmetry::symmetric);
        s.name = "A_IV";
        return s;
    }
    throw Error("matspaces", "exemplar", "unknown name '" + name + "'");
}

MatrixSpace doubled(const MatrixSpace& B, Symmetry kind) {
    if (kind == Symmetry::general)
        throw Error("matspaces", "doubled", "kind must be symmetric or skew");
    MatrixSpace S;
    S.name = "doubled(" + B.name + ")";
    S.rows = S.cols = B.rows + B.cols;
    S.symmetry = kind;
    for (const auto& b : B.basis) {
        MatRat m(S.rows, S.cols);
        for (std::size_t i = 0; i < B.rows; ++i)
            for (std::size_t j = 0; j < B.cols; ++j) {
                m(i, B.rows + j) = b(i, j);
                m(B.rows + j, i) =
                    (kind == Symmetry::symmetric) ? b(i, j) : -b(i, j);
            }
        S.basis.push_back(m);
    }
    S.validate();
    return S;
}

namespace {

// univariate polynomials as coefficient vectors, low degree first
using UniPoly = std::vector<Rat>;

void uni_trim(UniPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

UniPoly uni_rem(UniPoly a, const UniPoly& b) {
    uni_trim(a);
    while (a.size() >= b.size() && !a.empty()) {
        Rat factor = a.back() / b.back();
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
        uni_trim(a);
    }
    return a;
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
    uni_trim(a);
    uni_trim(b);
    while (!b.empty()) {
        UniPoly r = uni_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

UniPoly to_unipoly(const MPoly& p) {
    UniPoly out(p.degree() + 1, Rat(0));
    for (const auto& [e, c] : p.terms()) out[e[0]] = c;
    uni_trim(out);
    return out;
}

void subsets_of(std::size_t n, std::size_t k,
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

namespace {

std::size_t binom_count(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t acc = 1;
    for (std::size_t i = 0; i < k; ++i) {
        acc = acc * (n - i) / (i + 1);
        if (acc > 1000000) return acc;  // saturates; only compared to budgets
    }
    return acc;
}

// Lagrange interpolation of the degree <= npoints-1 polynomial through
// (t_i, v_i), t_i = 0, 1, ..., npoints-1.
UniPoly interpolate(const RatVec& values) {
    const std::size_t k = values.size();
    UniPoly acc;
    for (std::size_t i = 0; i < k; ++i) {
        if (sgn(values[i]) == 0) continue;
        UniPoly basis{Rat(1)};
        Rat denom = 1;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            // multiply by (t - j)
            UniPoly next(basis.size() + 1, Rat(0));
            for (std::size_t d = 0; d < basis.size(); ++d) {
                next[d + 1] += basis[d];
                next[d] -= basis[d] * Rat(static_cast<long>(j));
            }
            basis = std::move(next);
            denom *= Rat(static_cast<long>(i)) - Rat(static_cast<long>(j));
        }
        Rat scale = values[i] / denom;
        if (acc.size() < basis.size()) acc.resize(basis.size(), Rat(0));
        for (std::size_t d = 0; d < basis.size(); ++d)
            acc[d] += basis[d] * scale;
    }
    uni_trim(acc);
    return acc;
}

// det(U (M0 + t M1) W) for random compressions U, W: a polynomial multiple
// of the r-th determinantal divisor of the pencil.
UniPoly mixed_minor(const MatRat& M0, const MatRat& M1, std::size_t r,
                    Rng& rng) {
    const std::size_t rows = M0.rows(), cols = M0.cols();
    MatRat U(r, rows), W(cols, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < rows; ++j) U(i, j) = rng.next_rat(9);
    for (std::size_t i = 0; i < cols; ++i)
        for (std::size_t j = 0; j < r; ++j) W(i, j) = rng.next_rat(9);
    RatVec values(r + 1);
    for (std::size_t t = 0; t <= r; ++t) {
        MatRat m = U * (M0 + M1.scaled(Rat(static_cast<long>(t)))) * W;
        values[t] = det_exact(m);
    }
    return interpolate(values);
}

}  // namespace

PencilDrop pencil_rank_drop(const MatRat& M0, const MatRat& M1, std::size_t r) {
    PencilDrop out;
    const std::size_t rows = M0.rows(), cols = M0.cols();
    assert(M1.rows() == rows && M1.cols() == cols);
    if (r == 0 || r > std::min(rows, cols))
        throw Error("matspaces", "pencil_rank_drop", "bad target rank");

    // the point at infinity is checked directly
    if (rank_exact(M1) != r) {
        out.drops = true;
        out.rational_point = RatVec{Rat(0), Rat(1)};
        out.rational_rank = rank_exact(M1);
        return out;
    }

    // common factor of the r-minors of M0 + t M1
    UniPoly g;
    bool generically_low = false;
    if (binom_count(rows, r) * binom_count(cols, r) <= 200 && r <= 5) {
        // small case: all minors, symbolically
        std::vector<std::vector<std::size_t>> rsets, csets;
        subsets_of(rows, r, rsets);
        subsets_of(cols, r, csets);
        bool any_nonzero = false;
        for (const auto& rs : rsets) {
            for (const auto& cs : csets) {
                std::vector<std::vector<MPoly>> sub(r, std::vector<MPoly>(r));
                for (std::size_t i = 0; i < r; ++i)
                    for (std::size_t j = 0; j < r; ++j) {
                        MPoly entry = MPoly::constant(1, M0(rs[i], cs[j]));
                        entry.add_term(Expo{1}, M1(rs[i], cs[j]));
                        sub[i][j] = entry;
                    }
                UniPoly minor = to_unipoly(det_poly(sub));
                if (minor.empty()) continue;
                any_nonzero = true;
                g = g.empty() ? minor : uni_gcd(g, minor);
                if (g.size() == 1) return out;  // coprime minors: no root
            }
        }
        generically_low = !any_nonzero;
    } else {
        // large case: gcd of random determinantal compressions, iterated to
        // stabilization; the r-th determinantal divisor divides each one, so
        // a constant gcd proves the absence of a drop
        Rng rng(0x9d7fu ^ (rows << 8) ^ cols);
        g = mixed_minor(M0, M1, r, rng);
        int stable = 0;
        for (int iter = 0; iter < 24 && stable < 3; ++iter) {
            if (g.size() == 1) return out;
            UniPoly next = uni_gcd(g, mixed_minor(M0, M1, r, rng));
            stable = (next == g) ? stable + 1 : 0;
            g = std::move(next);
        }
        if (g.size() == 1) return out;
        generically_low = g.empty();
    }
    if (generically_low) {
        // every r-minor vanishes identically: the generic rank is below r
        out.drops = true;
        out.rational_point = RatVec{Rat(1), Rat(0)};
        out.rational_rank = rank_exact(M0);
        return out;
    }
    out.gcd_degree = static_cast<unsigned>(g.size() - 1);
    out.drops = true;  // nonconstant common factor: a root exists over C
    // census over a grid sized by the minor degree, for a rational witness
    const long bound = static_cast<long>(g.size());
    for (long t = -bound; t <= bound; ++t) {
        MatRat m = M0 + M1.scaled(Rat(t));
        std::size_t rk = rank_exact(m);
        if (rk < r) {
            out.rational_point = RatVec{Rat(1), Rat(t)};
            out.rational_rank = rk;
            break;
        }
    }
    return out;
}

RankCertificate certify_constant_rank(const MatrixSpace& S, std::size_t r,
                                      const std::string& mode, Rng& rng,
                                      int trials, std::size_t minor_budget) {
    RankCertificate cert;
    cert.claimed_rank = r;
    cert.mode = mode;
    cert.trials = trials;

    const long height = 1000000;
    for (int t = 0; t < trials; ++t) {
        RatVec params = rng.next_rat_vector(S.dim(), height);
        bool zero = true;
        for (const auto& q : params) zero = zero && sgn(q) == 0;
        if (zero) params[0] = 1;
        std::size_t rk = rank_exact(S.at(params));
        if (rk != r) {
            cert.refutation_point = params;
            cert.refutation_rank = rk;
            cert.note = "random parameter point of different rank";
            return cert;
        }
        if (t == 0) cert.witness = params;
    }

    // exact rank-drop probe along random pencils inside the space
    if (S.dim() >= 2) {
        for (int probe = 0; probe < 3; ++probe) {
            RatVec u = rng.next_rat_vector(S.dim(), 9);
            RatVec w = rng.next_rat_vector(S.dim(), 9);
            if (in_span({u}, w)) continue;
            if (rank_exact(S.at(u)) != r || rank_exact(S.at(w)) != r) continue;
            PencilDrop drop = pencil_rank_drop(S.at(u), S.at(w), r);
            if (drop.drops) {
                cert.refutation_rank = drop.rational_rank;
                if (drop.rational_point) {
                    RatVec point(S.dim(), Rat(0));
                    const RatVec& c = *drop.rational_point;
                    for (std::size_t p = 0; p < S.dim(); ++p)
                        point[p] = c[0] * u[p] + c[1] * w[p];
                    cert.refutation_point = point;
                }
                cert.note =
                    "rank drops along a pencil (common root of the r-minors, "
                    "gcd degree " +
                    std::to_string(drop.gcd_degree) + ")";
                return cert;
            }
        }
    }

    if (mode == "symbolic") {
        const std::size_t k = r + 1;
        if (k <= std::min(S.rows, S.cols)) {
            std::vector<std::vector<std::size_t>> rsets, csets;
            subsets_of(S.rows, k, rsets);
            subsets_of(S.cols, k, csets);
            if (rsets.size() * csets.size() > minor_budget)
                throw Error("matspaces", "certify_constant_rank",
                            "minor budget exceeded for symbolic mode");
            std::vector<std::vector<MPoly>> sym(
                S.rows, std::vector<MPoly>(S.cols, MPoly(S.dim())));
            for (std::size_t i = 0; i < S.rows; ++i)
                for (std::size_t j = 0; j < S.cols; ++j)
                    for (std::size_t p = 0; p < S.dim(); ++p) {
                        const Rat& c = S.basis[p](i, j);
                        if (sgn(c) == 0) continue;
                        Expo e(S.dim(), 0);
                        e[p] = 1;
                        sym[i][j].add_term(e, c);
                    }
            for (const auto& rs : rsets)
                for (const auto& cs : csets) {
                    std::vector<std::vector<MPoly>> sub(k,
                                                        std::vector<MPoly>(k));
                    for (std::size_t i = 0; i < k; ++i)
                        for (std::size_t j = 0; j < k; ++j)
                            sub[i][j] = sym[rs[i]][cs[j]];
                    if (!det_poly(sub).is_zero()) {
                        cert.note = "an (r+1)-minor is not identically zero";
                        return cert;
                    }
                }
        }
        cert.minors_vanish_identically = true;
    } else {
        // Schwartz-Zippel on the degree-(r+1) minors over [-height, height]
        const double per_trial = std::log2(static_cast<double>(r + 1)) -
                                 std::log2(static_cast<double>(2 * height + 1));
        cert.log2_failure_bound = per_trial * trials;
    }
    cert.certified = true;
    return cert;
}

MatrixSpace split_type(std::size_t r, std::size_t m, Rng& rng) {
    if (r % 2 != 0)
        throw Error("matspaces", "split_type", "rank must be even");
    if (r == 0 || r > m)
        throw Error("matspaces", "split_type", "need 0 < r <= m");
    const std::size_t half = r / 2;
    const std::size_t wide = m - half;
    const std::size_t dim = m - r + 1;
    for (int attempt = 0; attempt < 20; ++attempt) {
        MatrixSpace B;
        B.name = "split_core";
        B.rows = half;
        B.cols = wide;
        B.symmetry = Symmetry::general;
        for (std::size_t p = 0; p < dim; ++p) {
            MatRat b(half, wide);
            for (std::size_t i = 0; i < half; ++i)
                for (std::size_t j = 0; j < wide; ++j) b(i, j) = rng.next_rat(9);
            B.basis.push_back(b);
        }
        try {
            B.validate();
        } catch (const Error&) {
            continue;
        }
        MatrixSpace S = doubled(B, Symmetry::symmetric);
        S.name = "split_type:" + std::to_string(r) + "," + std::to_string(m);
        RankCertificate cert = certify_constant_rank(S, r, "randomized", rng);
        if (cert.certified) return S;
    }
    throw Error("matspaces", "split_type", "genericity failure after retries");
}

namespace {

int wedge_sign_before(std::uint32_t mask, std::size_t i) {
    std::uint32_t lower = mask & ((1u << i) - 1);
    return __builtin_popcount(lower) % 2 == 0 ? 1 : -1;
}

}  // namespace

MatrixSpace graded_algebra_space(std::size_t m, std::size_t k) {
    if (k < 1 || k >= m)
        throw Error("matspaces", "graded_algebra_space", "need 1 <= k < m");
    std::vector<std::uint32_t> kmasks, k1masks;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        std::size_t pop = static_cast<std::size_t>(__builtin_popcount(mask));
        if (pop == k) kmasks.push_back(mask);
        if (pop == k + 1) k1masks.push_back(mask);
    }
    std::map<std::uint32_t, std::size_t> k_index, k1_index;
    for (std::size_t i = 0; i < kmasks.size(); ++i) k_index[kmasks[i]] = i;
    for (std::size_t i = 0; i < k1masks.size(); ++i) k1_index[k1masks[i]] = i;

    MatrixSpace S;
    S.name = "graded:" + std::to_string(m) + "," + std::to_string(k);
    const bool square = (m == 2 * k + 1);
    S.rows = square ? kmasks.size() : k1masks.size();
    S.cols = kmasks.size();
    S.symmetry = square ? (k % 2 == 0 ? Symmetry::symmetric : Symmetry::skew)
                        : Symmetry::general;
    const std::uint32_t full = (1u << m) - 1;
    for (std::size_t v = 0; v < m; ++v) {
        MatRat b(S.rows, S.cols);
        for (std::size_t c = 0; c < kmasks.size(); ++c) {
            std::uint32_t smask = kmasks[c];
            if (smask & (1u << v)) continue;
            std::uint32_t image = smask | (1u << v);
            int sign = wedge_sign_before(smask, v);
            if (!square) {
                b(k1_index[image], c) = sign;
            } else {
                // volume identification: pair Lambda^{k+1} with Lambda^k by
                // wedging to the top form
                std::uint32_t tmask = full & ~image;
                int perm_sign = 1;
                for (std::size_t i = 0; i < m; ++i) {
                    if (!(tmask & (1u << i))) continue;
                    std::uint32_t higher_in_image =
                        image & ~((1u << (i + 1)) - 1u);
                    if (__builtin_popcount(higher_in_image) % 2 == 1)
                        perm_sign = -perm_sign;
                }
                b(k_index[tmask], c) = sign * perm_sign;
            }
        }
        S.basis.push_back(b);
    }
    S.validate();
    return S;
}

OddRankReport odd_rank_obstruction(std::size_t m, std::size_t r, int trials,
                                   Rng& rng) {
    if (r % 2 == 0)
        throw Error("matspaces", "odd_rank_obstruction", "rank must be odd");
    if (r > m)
        throw Error("matspaces", "odd_rank_obstruction", "need r <= m");
    OddRankReport report;
    report.m = m;
    report.r = r;
    report.trials = trials;
    for (int t = 0; t < trials; ++t) {
        // random 2-dimensional symmetric space of generic rank exactly r:
        // factor^t D_i factor with a shared full-rank r x m factor bounds
        // every element's rank by r
        MatRat factor(r, m);
        do {
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < m; ++j)
                    factor(i, j) = rng.next_rat(9);
        } while (rank_exact(factor) != r);
        auto random_sym = [&] {
            MatRat d(r, r);
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = i; j < r; ++j) {
                    d(i, j) = rng.next_rat(9);
                    d(j, i) = d(i, j);
                }
            return d;
        };
        MatRat M0 = factor.transpose() * random_sym() * factor;
        MatRat M1 = factor.transpose() * random_sym() * factor;
        while (rank_exact(M0) != r)
            M0 = factor.transpose() * random_sym() * factor;
        while (rank_exact(M1) != r)
            M1 = factor.transpose() * random_sym() * factor;

        OddRankTrial trial;
        PencilDrop drop = pencil_rank_drop(M0, M1, r);
        trial.refuted = drop.drops;
        trial.gcd_degree = drop.gcd_degree;
        if (drop.rational_point) {
            trial.rational_witness = true;
            trial.witness = *drop.rational_point;
        }
        if (trial.refuted)
            ++report.refuted;
        else
            report.constant_rank_space_found = true;
        report.details.push_back(trial);
    }
    return report;
}

namespace {

struct EntryPattern {
    // for each (i, j): parameter index and sign, or -1 when zero
    std::vector<std::vector<int>> param;
    std::vector<std::vector<int>> sign;
    std::size_t n = 0;
    std::size_t nparams = 0;
    bool simple = true;  // at most one parameter per entry, coefficients +-1
};

EntryPattern pattern_of(const MatrixSpace& S) {
    EntryPattern P;
    P.n = S.rows;
    P.nparams = S.dim();
    P.param.assign(S.rows, std::vector<int>(S.cols, -1));
    P.sign.assign(S.rows, std::vector<int>(S.cols, 0));
    for (std::size_t p = 0; p < S.dim(); ++p)
        for (std::size_t i = 0; i < S.rows; ++i)
            for (std::size_t j = 0; j < S.cols; ++j) {
                const Rat& c = S.basis[p](i, j);
                if (sgn(c) == 0) continue;
                if (P.param[i][j] != -1 || (c != 1 && c != -1)) {
                    P.simple = false;
                    return P;
                }
                P.param[i][j] = static_cast<int>(p);
                P.sign[i][j] = sgn(c);
            }
    return P;
}

struct PermSearch {
    const EntryPattern* A;
    const EntryPattern* B;
    std::vector<int> row_image;
    std::vector<int> row_sign;
    std::vector<bool> image_used;
    std::vector<int> par_image;
    std::vector<int> par_sign;
    std::vector<bool> par_used;

    bool check_entry(std::size_t i, std::size_t j,
                     std::vector<std::size_t>& tentative) {
        const int ap = A->param[i][j];
        const std::size_t bi = static_cast<std::size_t>(row_image[i]);
        const std::size_t bj = static_cast<std::size_t>(row_image[j]);
        const int bp = B->param[bi][bj];
        if (ap == -1 || bp == -1) return ap == -1 && bp == -1;
        const int needed_sign =
            A->sign[i][j] * B->sign[bi][bj] * row_sign[i] * row_sign[j];
        if (par_image[ap] != -1)
            return par_image[ap] == bp && par_sign[ap] == needed_sign;
        if (par_used[static_cast<std::size_t>(bp)]) return false;
        par_image[ap] = bp;
        par_sign[ap] = needed_sign;
        par_used[static_cast<std::size_t>(bp)] = true;
        tentative.push_back(static_cast<std::size_t>(ap));
        return true;
    }

    bool extend(std::size_t i) {
        if (i == A->n) return true;
        for (std::size_t c = 0; c < A->n; ++c) {
            if (image_used[c]) continue;
            for (int s : {1, -1}) {
                row_image[i] = static_cast<int>(c);
                row_sign[i] = s;
                image_used[c] = true;
                std::vector<std::size_t> tentative;
                bool ok = true;
                for (std::size_t j = 0; j <= i && ok; ++j) {
                    ok = check_entry(i, j, tentative);
                    if (ok && j != i) ok = check_entry(j, i, tentative);
                }
                if (ok && extend(i + 1)) return true;
                for (std::size_t ap : tentative) {
                    par_used[static_cast<std::size_t>(par_image[ap])] = false;
                    par_image[ap] = -1;
                    par_sign[ap] = 0;
                }
                image_used[c] = false;
            }
        }
        row_image[i] = -1;
        return false;
    }
};

}  // namespace

bool equivalent_by_signed_permutation(const MatrixSpace& A,
                                      const MatrixSpace& B) {
    if (A.rows != A.cols || B.rows != B.cols) return false;
    if (A.rows != B.rows || A.dim() != B.dim()) return false;
    EntryPattern pa = pattern_of(A), pb = pattern_of(B);
    if (!pa.simple || !pb.simple) return false;
    PermSearch search;
    search.A = &pa;
    search.B = &pb;
    search.row_image.assign(pa.n, -1);
    search.row_sign.assign(pa.n, 0);
    search.image_used.assign(pa.n, false);
    search.par_image.assign(pa.nparams, -1);
    search.par_sign.assign(pa.nparams, 0);
    search.par_used.assign(pa.nparams, false);
    return search.extend(0);
}

bool matches_doubling(const MatrixSpace& A, const MatrixSpace& B,
                      Symmetry kind) {
    MatrixSpace D = doubled(B, kind);
    if (D.rows != A.rows || D.cols != A.cols || D.dim() != A.dim())
        return false;
    bool equal = true;
    for (std::size_t p = 0; p < A.dim() && equal; ++p)
        equal = A.basis[p] == D.basis[p];
    if (equal) return true;
    return equivalent_by_signed_permutation(A, D);
}

MatrixSpace parse_matspace_spec(const std::string& spec, Rng& rng) {
    auto colon = spec.find(':');
    if (colon == std::string::npos) return exemplar(spec);
    const std::string kind = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    auto parse_two = [&](const char* where) {
        auto comma = arg.find(',');
        if (comma == std::string::npos)
            throw Error("matspaces", where, "expected two integers");
        return std::make_pair(std::stoul(arg.substr(0, comma)),
                              std::stoul(arg.substr(comma + 1)));
    };
    if (kind == "split") {
        auto [r, m] = parse_two("split_type");
        return split_type(r, m, rng);
    }
    if (kind == "graded") {
        auto [m, k] = parse_two("graded_algebra_space");
        return graded_algebra_space(m, k);
    }
    if (kind == "doubled") {
        auto comma = arg.rfind(',');
        if (comma == std::string::npos)
            throw Error("matspaces", "doubled", "expected <name>,<sym|skew>");
        const std::string base = arg.substr(0, comma);
        const std::string tag = arg.substr(comma + 1);
        Symmetry sym = tag == "skew" ? Symmetry::skew : Symmetry::symmetric;
        return doubled(exemplar(base), sym);
    }
    throw Error("matspaces", "parse_matspace_spec",
                "unknown constructor '" + kind + "'");
}

}  // namespace pdgeo
