#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdgeo/matrix.hpp"
#include "pdgeo/poly.hpp"
#include "pdgeo/rng.hpp"
#include "pdgeo/series.hpp"

using namespace pdgeo;

TEST_CASE("rank of small matrices") {
    CHECK(rank_exact(MatRat::identity(3)) == 3);
    CHECK(rank_exact(MatRat(2, 2)) == 0);
    MatRat m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 2;
    m(1, 1) = 4;
    CHECK(rank_exact(m) == 1);
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis(MatRat::identity(4)).empty());

    MatRat row(1, 2);
    row(0, 0) = 1;
    row(0, 1) = 1;
    auto basis = kernel_basis(row);
    REQUIRE(basis.size() == 1);
    CHECK(basis[0][0] == -basis[0][1]);

    MatRat prop(2, 2);
    prop(0, 0) = 1;
    prop(0, 1) = 2;
    prop(1, 0) = 2;
    prop(1, 1) = 4;
    auto k = kernel_basis(prop);
    REQUIRE(k.size() == 1);
    // kernel contains (2, -1)
    CHECK(k[0][0] * Rat(-1) == k[0][1] * Rat(2));
}

TEST_CASE("rank + kernel = cols, rank invariant under row scaling") {
    Rng rng(12345);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 1 + rng.next_below(5);
        std::size_t cols = 1 + rng.next_below(5);
        MatRat m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.next_rat(4);
        std::size_t r = rank_exact(m);
        CHECK(r + kernel_basis(m).size() == cols);
        // exact annihilation
        for (const auto& v : kernel_basis(m)) {
            RatVec image = m.apply(v);
            for (const auto& q : image) CHECK(sgn(q) == 0);
        }
        // scale a row by a nonzero rational
        MatRat scaled = m;
        std::size_t i = rng.next_below(rows);
        Rat c = rng.next_rat_nonzero(7) / rng.next_rat_nonzero(7);
        for (std::size_t j = 0; j < cols; ++j) scaled(i, j) *= c;
        CHECK(rank_exact(scaled) == r);
    }
}

TEST_CASE("determinant") {
    MatRat m(2, 2);
    m(0, 0) = rat(1, 2);
    m(0, 1) = rat(1, 3);
    m(1, 0) = rat(1, 5);
    m(1, 1) = rat(1, 7);
    CHECK(det_exact(m) == rat(1, 14) - rat(1, 15));
}

TEST_CASE("cramer kernel vectors on a 1x2 symbol matrix") {
    MPoly x = MPoly::variable(2, 0), y = MPoly::variable(2, 1);
    std::vector<std::vector<MPoly>> m{{x, y}};
    auto vecs = cramer_kernel_vectors(m);
    REQUIRE(vecs.size() == 1);
    CHECK(vecs[0][0] == y);
    CHECK(vecs[0][1] == -x);
}

TEST_CASE("cramer kernel vectors contain coordinate kernel") {
    std::vector<std::vector<MPoly>> m(2, std::vector<MPoly>(3));
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            m[i][j] = MPoly::constant(1, i == j ? 1 : 0);
    auto vecs = cramer_kernel_vectors(m);
    REQUIRE(vecs.size() == 1);
    CHECK(vecs[0][0].is_zero());
    CHECK(vecs[0][1].is_zero());
    CHECK(vecs[0][2] == MPoly::constant(1, 1));
}

TEST_CASE("cramer kernel vectors annihilate random linear-entry matrices") {
    Rng rng(99);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<MPoly>> m(2, std::vector<MPoly>(4));
        for (auto& row : m)
            for (auto& entry : row) {
                entry = MPoly(3);
                for (std::size_t v = 0; v < 3; ++v) {
                    Expo e(3, 0);
                    e[v] = 1;
                    entry.add_term(e, rng.next_rat(5));
                }
            }
        for (const auto& v : cramer_kernel_vectors(m)) {
            for (std::size_t i = 0; i < 2; ++i) {
                MPoly acc(3);
                for (std::size_t j = 0; j < 4; ++j) acc = acc + m[i][j] * v[j];
                CHECK(acc.is_zero());
            }
        }
    }
}

TEST_CASE("series inversion, univariate") {
    auto table = MonomialTable::get(1, 3);
    // f(x) = x + x^2  ->  g(x) = x - x^2 + 2x^3
    MPoly f(1);
    f.add_term(Expo{1}, rat(1));
    f.add_term(Expo{2}, rat(1));
    auto g = series_invert_map({TruncSeries::from_poly(f, table)});
    REQUIRE(g.size() == 1);
    CHECK(g[0].coeff(Expo{1}) == 1);
    CHECK(g[0].coeff(Expo{2}) == -1);
    CHECK(g[0].coeff(Expo{3}) == 2);
}

TEST_CASE("series inversion, linear 2x2 jet") {
    auto table = MonomialTable::get(2, 3);
    // f = (x + y, y): inverse (x - y, y)
    MPoly f0(2), f1(2);
    f0.add_term(Expo{1, 0}, rat(1));
    f0.add_term(Expo{0, 1}, rat(1));
    f1.add_term(Expo{0, 1}, rat(1));
    auto g = series_invert_map(
        {TruncSeries::from_poly(f0, table), TruncSeries::from_poly(f1, table)});
    CHECK(g[0].coeff(Expo{1, 0}) == 1);
    CHECK(g[0].coeff(Expo{0, 1}) == -1);
    CHECK(g[1].coeff(Expo{0, 1}) == 1);
    CHECK(g[1].coeff(Expo{1, 0}) == 0);
}

TEST_CASE("identity map inverts to itself") {
    auto table = MonomialTable::get(1, 4);
    auto g = series_invert_map({TruncSeries::variable(table, 0)});
    CHECK(g[0].to_poly() == MPoly::variable(1, 0));
}

TEST_CASE("singular linear part is rejected") {
    auto table = MonomialTable::get(2, 2);
    MPoly f0(2);
    f0.add_term(Expo{1, 0}, rat(1));
    std::vector<TruncSeries> f{TruncSeries::from_poly(f0, table),
                               TruncSeries::from_poly(f0, table)};
    CHECK_THROWS(series_invert_map(f));
}

TEST_CASE("inverse composes to the identity on random polynomial maps") {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + rng.next_below(3);
        unsigned order = 2 + static_cast<unsigned>(rng.next_below(3));
        auto table = MonomialTable::get(n, order);
        std::vector<TruncSeries> f;
        // random map with identity linear part and random higher terms
        for (std::size_t i = 0; i < n; ++i) {
            TruncSeries s = TruncSeries::variable(table, i);
            for (std::size_t idx = table->degree_offset(2); idx < table->size();
                 ++idx)
                s.coeff(idx) = rng.next_rat(3);
            f.push_back(s);
        }
        auto g = series_invert_map(f);
        for (std::size_t i = 0; i < n; ++i) {
            TruncSeries check = compose(f[i], g) - TruncSeries::variable(table, i);
            CHECK(check.is_zero());
        }
    }
}

TEST_CASE("series multiplication truncates at the order") {
    auto table = MonomialTable::get(2, 2);
    auto x = TruncSeries::variable(table, 0);
    auto y = TruncSeries::variable(table, 1);
    auto p = (x + y) * (x - y);
    CHECK(p.coeff(Expo{2, 0}) == 1);
    CHECK(p.coeff(Expo{0, 2}) == -1);
    CHECK(p.coeff(Expo{1, 1}) == 0);
    auto cubic = p * x;  // entirely beyond order 2
    CHECK(cubic.is_zero());
}

TEST_CASE("reciprocal") {
    auto table = MonomialTable::get(1, 4);
    auto one_plus_x =
        TruncSeries::constant(table, 1) + TruncSeries::variable(table, 0);
    auto r = one_plus_x.reciprocal();
    for (unsigned k = 0; k <= 4; ++k)
        CHECK(r.coeff(Expo{k}) == (k % 2 == 0 ? rat(1) : rat(-1)));
    auto prod = r * one_plus_x;
    CHECK(prod.coeff(Expo{0}) == 1);
    for (unsigned k = 1; k <= 4; ++k) CHECK(prod.coeff(Expo{k}) == 0);
}

TEST_CASE("polynomial substitution and shift") {
    // p = x0^2 x1; shift by (1, -1)
    MPoly p(2);
    p.add_term(Expo{2, 1}, rat(1));
    MPoly q = p.shifted({rat(1), rat(-1)});
    RatVec point{rat(2), rat(3)};
    CHECK(q.eval(point) == p.eval({rat(3), rat(2)}));
}

#include "pdgeo/catalog.hpp"

TEST_CASE("cramer kernel vectors annihilate catalog conormal matrices") {
    // symbolic polynomial-identity check on the augmented Jacobians
    // [lift; d lift] of the small catalog charts
    for (const char* spec : {"veronese:1,2", "veronese:1,3", "segre:1,1"}) {
        auto X = parse_variety_spec(spec);
        const std::size_t n = X.source_dim, N = X.ambient_dim;
        std::vector<std::vector<MPoly>> jac(n + 1,
                                            std::vector<MPoly>(N + 1));
        jac[0][0] = MPoly::constant(n, 1);
        for (std::size_t i = 0; i < N; ++i) {
            jac[0][i + 1] = X.chart[i];
            for (std::size_t a = 0; a < n; ++a)
                jac[a + 1][i + 1] = X.chart[i].derivative(a);
        }
        for (const auto& v : cramer_kernel_vectors(jac)) {
            for (std::size_t r = 0; r <= n; ++r) {
                MPoly acc(n);
                for (std::size_t c = 0; c <= N; ++c)
                    acc = acc + jac[r][c] * v[c];
                CHECK(acc.is_zero());
            }
        }
        // at a random general point the vectors span the conormal space
        Rng rng(4242);
        RatVec p = X.general_point(rng, 3);
        std::vector<RatVec> values;
        for (const auto& v : cramer_kernel_vectors(jac)) {
            RatVec val(N + 1);
            for (std::size_t c = 0; c <= N; ++c) val[c] = v[c].eval(p);
            values.push_back(val);
        }
        CHECK(rank_of_span(values) == N - n);
    }
}

TEST_CASE("composition requires a zero constant term") {
    auto table = MonomialTable::get(1, 3);
    auto f = TruncSeries::variable(table, 0);
    auto bad = TruncSeries::constant(table, 1) + TruncSeries::variable(table, 0);
    CHECK_THROWS(compose(f, {bad}));
}
