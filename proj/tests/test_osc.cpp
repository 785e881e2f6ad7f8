#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdgeo/catalog.hpp"
#include "pdgeo/jets.hpp"
#include "pdgeo/osc.hpp"
#include "pdgeo/rng.hpp"

using namespace pdgeo;

namespace {

std::size_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

MPoly random_form(std::size_t n, unsigned degree, Rng& rng) {
    MPoly p(n);
    std::vector<Expo> monos;
    // all monomials of the exact degree
    std::function<void(Expo&, std::size_t, unsigned)> rec =
        [&](Expo& e, std::size_t pos, unsigned left) {
            if (pos + 1 == n) {
                e[pos] = left;
                monos.push_back(e);
                return;
            }
            for (unsigned v = 0; v <= left; ++v) {
                e[pos] = v;
                rec(e, pos + 1, left - v);
            }
        };
    Expo e(n, 0);
    rec(e, 0, degree);
    for (const auto& mono : monos) p.add_term(mono, rng.next_rat(5));
    return p;
}

}  // namespace

TEST_CASE("osculating hyperplanes: the space has affine dimension a") {
    Rng rng(1);
    for (const char* spec : {"veronese:1,3", "segre:1,2", "veronese:2,2"}) {
        auto X = parse_variety_spec(spec);
        RatVec p = X.general_point(rng, 3);
        auto rep = osculating_space(X, p, 1, 1);
        CHECK(rep.dimension == X.codim());
    }
}

TEST_CASE("osculating quadrics of the twisted cubic at low orders") {
    Rng rng(2);
    auto X = veronese(1, 3);
    RatVec p = X.general_point(rng, 3);
    // counts C(n+a+d, d) - C(n+k, k)
    CHECK(osculating_space(X, p, 2, 1).dimension == 10 - 2);
    CHECK(osculating_space(X, p, 2, 2).dimension == 10 - 3);
}

TEST_CASE("low-order osculating counts match the binomial formula") {
    Rng rng(3);
    struct Row {
        const char* spec;
        unsigned d;
    };
    for (Row row : {Row{"veronese:2,2", 2}, Row{"segre:1,2", 3}}) {
        auto X = parse_variety_spec(row.spec);
        RatVec p = X.general_point(rng, 3);
        const std::size_t n = X.source_dim, N = X.ambient_dim;
        for (unsigned k = 1; k <= row.d; ++k) {
            auto rep = osculating_space(X, p, row.d, k, false);
            CHECK(rep.dimension == binom(N + row.d, row.d) - binom(n + k, k));
        }
    }
}

TEST_CASE("osculating dimensions decrease and stabilize at the ideal") {
    Rng rng(4);
    auto X = veronese(1, 3);
    RatVec p = X.general_point(rng, 3);
    std::size_t prev = SIZE_MAX;
    for (unsigned ord = 1; ord <= 7; ++ord) {
        auto rep = osculating_space(X, p, 2, ord, false);
        CHECK(rep.dimension <= prev);
        prev = rep.dimension;
    }
    // the twisted cubic is cut out by three quadrics
    CHECK(osculating_space(X, p, 2, 6, false).dimension == 3);
    CHECK(osculating_space(X, p, 2, 7, false).dimension == 3);
}

TEST_CASE("quadrics singular at the point osculate to order three") {
    Rng rng(5);
    auto X = segre({1, 2});
    RatVec p = X.general_point(rng, 3);
    auto rep = osculating_space(X, p, 2, 3, false);
    const std::size_t a = X.codim();
    CHECK(rep.dimension >= a * (a + 1) / 2);
}

TEST_CASE("linear syzygies of the segre(2,2) second fundamental form") {
    Rng rng(6);
    auto A = second_ff(segre({2, 2}), rng, 3);
    auto rep = linear_syzygies(A, &rng);
    CHECK(rep.system_dim == 4);
    CHECK(rep.syzygy_dim > 0);
    REQUIRE(rep.has_witness);
    CHECK(rep.rank_bound_ok);
    // witness pairs are genuinely independent
    CHECK(rank_of_span(rep.witness.linear_forms) ==
          rep.witness.linear_forms.size());
}

TEST_CASE("generic low-dimensional systems have no syzygies") {
    Rng rng(7);
    for (int t = 0; t < 20; ++t) {
        QuadricSystem A;
        A.tangent_dim = 4;
        for (int i = 0; i < 2; ++i) {
            MatRat q(4, 4);
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t c = r; c < 4; ++c) {
                    q(r, c) = rng.next_rat(9);
                    q(c, r) = q(r, c);
                }
            A.quadrics.push_back(q);
            A.labels.push_back("q");
        }
        CHECK(linear_syzygies(A, &rng).syzygy_dim == 0);
    }
    // a single nonzero quadric admits none
    QuadricSystem single;
    single.tangent_dim = 3;
    MatRat q(3, 3);
    q(0, 0) = 2;
    q(1, 2) = q(2, 1) = 1;
    single.quadrics.push_back(q);
    single.labels.push_back("q");
    CHECK(linear_syzygies(single, &rng).syzygy_dim == 0);
}

TEST_CASE("witness syzygies satisfy the rank bound") {
    Rng rng(8);
    // systems built to have syzygies: { x l1, x l2, x l3 } share the factor x
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 5;
        QuadricSystem A;
        A.tangent_dim = n;
        for (int i = 0; i < 3; ++i) {
            // q = x_0 l with a random linear form l
            RatVec l = rng.next_rat_vector(n, 5);
            MatRat q(n, n);
            for (std::size_t c = 0; c < n; ++c) {
                q(0, c) += l[c];
                q(c, 0) += l[c];
            }
            A.quadrics.push_back(q);
            A.labels.push_back("q");
        }
        auto rep = linear_syzygies(A, &rng);
        if (rep.has_witness) CHECK(rep.rank_bound_ok);
    }
}

TEST_CASE("monge system holds for graphs of random quadrics") {
    Rng rng(9);
    for (std::size_t n : {3, 4}) {
        PolyVec quadrics;
        for (int i = 0; i < 2; ++i) quadrics.push_back(random_form(n, 2, rng));
        auto X = graph_variety(n, quadrics);
        RatVec p = X.general_point(rng, 3);
        auto sol = monge_check(X, p, rng);
        CHECK(sol.preconditions_ok);
        CHECK(sol.verdict == "holds");
        CHECK(sol.osc4_dim == X.codim());
        CHECK(sol.osc3_dim == X.codim() + binom(X.codim() + 1, 2));
        CHECK(monge_quadrics_vanish_on_samples(X, sol, rng));
    }
}

TEST_CASE("monge system holds for the conic") {
    Rng rng(10);
    auto X = veronese(1, 2);
    RatVec p = X.general_point(rng, 3);
    auto sol = monge_check(X, p, rng);
    CHECK(sol.verdict == "holds");
    CHECK(sol.osc4_dim == 1);
    CHECK(monge_quadrics_vanish_on_samples(X, sol, rng));
}

TEST_CASE("monge system fails for a random cubic graph hypersurface") {
    Rng rng(11);
    auto X = graph_variety(2, {random_form(2, 3, rng)});
    RatVec p = X.general_point(rng, 3);
    auto sol = monge_check(X, p, rng);
    CHECK(sol.preconditions_ok);
    CHECK(sol.verdict == "fails-at-order-3");
    CHECK(sol.osc4_dim == 0);
}

TEST_CASE("monge preconditions fail when the system has syzygies") {
    Rng rng(12);
    auto X = veronese(2, 2);
    RatVec p = X.general_point(rng, 3);
    auto sol = monge_check(X, p, rng);
    CHECK(sol.syzygy_dim > 0);
    CHECK(sol.verdict == "precondition-failed");
    // the triangular system itself is solvable: the ideal is quadratic
    CHECK(sol.solvable5);
    // the osculating dimensions exceed the no-syzygy bounds
    CHECK(sol.osc4_dim > X.codim());
}

TEST_CASE("line osculation orders") {
    Rng rng(13);
    // ruling of the quadric surface: contained, so full order
    auto S = segre({1, 1});
    RatVec p = S.general_point(rng, 3);
    RatVec ruling{rat(0), rat(1)};
    CHECK(line_contained(S, p, ruling) == Containment::contained);
    CHECK(line_osculation_order(S, p, ruling, 9) == 9);

    // generic direction on the veronese surface: order one
    auto V = veronese(2, 2);
    RatVec q = V.general_point(rng, 3);
    RatVec generic{rat(1), rat(2)};
    CHECK(line_osculation_order(V, q, generic, 5) == 1);
    CHECK(line_contained(V, q, generic) == Containment::not_contained);

    // asymptotic direction on a cubic-perturbed quadric graph: order two
    MPoly f(2);
    f.add_term(Expo{1, 1}, rat(1));
    f.add_term(Expo{3, 0}, rat(1));
    auto G = graph_variety(2, {f});
    RatVec origin{rat(0), rat(0)};
    RatVec asymptotic{rat(1), rat(0)};
    CHECK(line_osculation_order(G, origin, asymptotic, 5) == 2);
    CHECK(line_contained(G, origin, asymptotic) == Containment::undecidable);
}

TEST_CASE("maximal rank report for the quadric surface ruling") {
    Rng rng(14);
    auto X = segre({1, 1});
    RatVec p = X.general_point(rng, 3);
    auto rep = maximal_rank_report(X, p, {{rat(0), rat(1)}}, 3);
    CHECK(rep.base_condition_ok);
    CHECK(rep.inequality_holds);  // 1 [C(3,2) - 2] = 1 >= 1 (n - k) = 1
    REQUIRE(rep.levels.size() == 1);
    CHECK(rep.levels[0].maximal);
    CHECK(rep.levels[0].incremental == 1);
}

TEST_CASE("maximal rank report along a contained ruling of segre(1,2)") {
    Rng rng(15);
    auto X = segre({1, 2});
    RatVec p = X.general_point(rng, 3);
    // the second factor's directions rule the variety
    RatVec d1{rat(0), rat(1), rat(0)};
    auto rep = maximal_rank_report(X, p, {d1}, 4);
    CHECK(rep.base_condition_ok);
    for (const auto& level : rep.levels) CHECK(level.incremental <= level.expected);
}

TEST_CASE("rank deficiency for an osculating line that is not contained") {
    Rng rng(16);
    // a graph hypersurface with a line osculating to high order but not
    // contained: z = x1 x2 + x1^4 has F_2(v,v) = F_3(v,v,v) = 0 for v = e1
    MPoly f(2);
    f.add_term(Expo{1, 1}, rat(1));
    f.add_term(Expo{4, 0}, rat(1));
    auto X = graph_variety(2, {f});
    RatVec origin{rat(0), rat(0)};
    RatVec v{rat(1), rat(0)};
    CHECK(line_osculation_order(X, origin, v, 5) == 3);
    // the line does not osculate to order four, so the report flags the
    // failed base condition rather than evaluating vacuously
    auto rep4 = maximal_rank_report(X, origin, {v}, 4);
    CHECK(!rep4.base_condition_ok);
    // through order three the conditions hold and every level is maximal
    auto rep3 = maximal_rank_report(X, origin, {v}, 3);
    CHECK(rep3.base_condition_ok);
    CHECK(rep3.inequality_holds);
}
