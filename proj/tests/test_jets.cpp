#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdgeo/catalog.hpp"
#include "pdgeo/jets.hpp"
#include "pdgeo/matrix.hpp"
#include "pdgeo/rng.hpp"

using namespace pdgeo;

namespace {

MatRat random_invertible(std::size_t n, Rng& rng) {
    while (true) {
        MatRat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.next_rat(3);
        if (rank_exact(m) == n) return m;
    }
}

// independent oracle: intersect the kernels one quadric at a time
std::size_t singloc_dim_oracle(const QuadricSystem& A) {
    std::vector<RatVec> current;
    for (std::size_t i = 0; i < A.tangent_dim; ++i) {
        RatVec v(A.tangent_dim, Rat(0));
        v[i] = 1;
        current.push_back(v);
    }
    for (const auto& q : A.quadrics) {
        if (current.empty()) break;
        // restrict q to the span of `current`
        MatRat restricted(A.tangent_dim, current.size());
        for (std::size_t c = 0; c < current.size(); ++c) {
            RatVec img = q.apply(current[c]);
            for (std::size_t r = 0; r < A.tangent_dim; ++r)
                restricted(r, c) = img[r];
        }
        auto inner = kernel_basis(restricted);
        std::vector<RatVec> next;
        for (const auto& coeffs : inner) {
            RatVec v(A.tangent_dim, Rat(0));
            for (std::size_t c = 0; c < current.size(); ++c)
                for (std::size_t r = 0; r < A.tangent_dim; ++r)
                    v[r] += coeffs[c] * current[c][r];
            next.push_back(v);
        }
        current = next;
    }
    return current.size();
}

JetTower tower_at_random_point(const ParamVariety& X, unsigned order,
                               std::uint64_t seed, long height = 3) {
    Rng rng(seed);
    RatVec p = X.general_point(rng, height);
    return jet_tower(X, p, order);
}

}  // namespace

TEST_CASE("veronese(2,2) filtration: full quadrics, no cubics") {
    auto tower = tower_at_random_point(veronese(2, 2), 3, 11);
    REQUIRE(tower.filtration.size() == 2);
    CHECK(tower.filtration[0] == 3);
    CHECK(tower.filtration[1] == 0);
}

TEST_CASE("veronese(n,d) has full fundamental forms up to d, then zero") {
    auto t23 = tower_at_random_point(veronese(2, 3), 4, 12);
    REQUIRE(t23.filtration.size() == 3);
    CHECK(t23.filtration[0] == 3);  // S^2 of a 2-dim space
    CHECK(t23.filtration[1] == 4);  // S^3
    CHECK(t23.filtration[2] == 0);
    auto t13 = tower_at_random_point(veronese(1, 3), 4, 13);
    CHECK(t13.filtration == std::vector<std::size_t>{1, 1, 0});
}

TEST_CASE("grassmannian(3,6) filtration (9,9,1)") {
    auto tower = tower_at_random_point(grassmannian(3, 6), 4, 21, 2);
    CHECK(tower.tangent_dim == 9);
    REQUIRE(tower.filtration.size() == 3);
    CHECK(tower.filtration[0] == 9);
    CHECK(tower.filtration[1] == 1);
    CHECK(tower.filtration[2] == 0);
}

TEST_CASE("spinor(5) filtration: a1 = 5, a2 = 0") {
    auto tower = tower_at_random_point(spinor_variety(5), 3, 31, 2);
    CHECK(tower.tangent_dim == 10);
    REQUIRE(tower.filtration.size() == 2);
    CHECK(tower.filtration[0] == 5);
    CHECK(tower.filtration[1] == 0);
}

TEST_CASE("second fundamental form of segre(1,1) is one rank-2 quadric") {
    Rng rng(41);
    auto A = second_ff(segre({1, 1}), rng);
    REQUIRE(A.quadrics.size() == 1);
    CHECK(rank_exact(A.quadrics[0]) == 2);
}

TEST_CASE("II of a segre surjects onto the normal space") {
    for (auto dims : std::vector<std::vector<std::size_t>>{{1, 2}, {2, 2}}) {
        auto X = segre(dims);
        auto tower = tower_at_random_point(X, 2, 43);
        CHECK(tower.filtration[0] == X.codim());
    }
}

TEST_CASE("severi(8) second fundamental form at the chart origin") {
    auto X = severi(8);
    RatVec origin(16, Rat(0));
    auto tower = jet_tower(X, origin, 2);
    auto A = tower.second_ff();
    REQUIRE(A.quadrics.size() == 10);
    // at the origin the graph coordinates are the chart's own quadrics:
    // eight from conj(u2) u1 and the two norms
    CHECK(tower.filtration[0] == 10);
    // the norm quadrics u1 conj(u1), u2 conj(u2) have full rank 8 blocks
    std::size_t rank_two_count = 0, rank_sixteen = 0;
    Rng rng(5);
    for (const auto& q : A.quadrics) {
        auto r = rank_exact(q);
        if (r == 8) ++rank_two_count;
        if (r == 16) ++rank_sixteen;
    }
    CHECK(rank_two_count + rank_sixteen == 10);
}

TEST_CASE("tensor values are symmetric and match the hessians") {
    auto tower = tower_at_random_point(segre({1, 2}), 3, 55);
    Rng rng(56);
    const std::size_t n = tower.tangent_dim;
    RatVec u = rng.next_rat_vector(n, 5), v = rng.next_rat_vector(n, 5),
           w = rng.next_rat_vector(n, 5);
    for (std::size_t mu = 0; mu < tower.normal_dim; ++mu) {
        CHECK(tower.tensor(mu, 2, {u, v}) == tower.tensor(mu, 2, {v, u}));
        CHECK(tower.tensor(mu, 3, {u, v, w}) == tower.tensor(mu, 3, {w, u, v}));
        CHECK(tower.tensor(mu, 3, {u, v, w}) == tower.tensor(mu, 3, {v, u, w}));
        // q^mu(u, v) via the hessian matrix
        Rat via_matrix = dot(tower.hessian(mu).apply(u), v);
        CHECK(tower.tensor(mu, 2, {u, v}) == via_matrix);
    }
}

TEST_CASE("singloc dimensions") {
    Rng rng(61);
    auto cone = cone_over(veronese(1, 2));
    auto Ac = second_ff(cone, rng);
    CHECK(singloc(Ac).size() == 1);
    CHECK(singloc_dim_oracle(Ac) == 1);

    auto As = second_ff(segre({2, 2}), rng);
    CHECK(singloc(As).empty());
    CHECK(singloc_dim_oracle(As) == 0);

    auto td = tangent_developable(veronese(1, 3));
    auto At = second_ff(td, rng);
    CHECK(singloc(At).size() == 1);
    CHECK(singloc_dim_oracle(At) == 1);
}

TEST_CASE("smoothness principle instances") {
    Rng rng(67);
    for (const char* spec : {"veronese:2,2", "segre:1,2", "grassmannian:2,4",
                             "spinor:4", "severi:2"}) {
        auto X = parse_variety_spec(spec);
        for (int trial = 0; trial < 5; ++trial) {
            auto A = second_ff(X, rng);
            CHECK(singloc(A).empty());
        }
    }
    for (const char* spec : {"cone:veronese:1,2", "tandev:veronese:1,3"}) {
        auto X = parse_variety_spec(spec);
        auto A = second_ff(X, rng);
        CHECK(singloc(A).size() >= 1);
    }
}

TEST_CASE("generic quadric ranks") {
    Rng rng(71);
    auto A25 = second_ff(grassmannian(2, 5), rng);
    CHECK(generic_quadric_rank(A25, rng) == 4);

    auto A13 = second_ff(segre({1, 3}), rng);
    CHECK(generic_quadric_rank(A13, rng) == 2);

    // a single rank-2 quadric
    QuadricSystem single;
    single.tangent_dim = 3;
    MatRat q(3, 3);
    q(0, 1) = q(1, 0) = 1;
    single.quadrics.push_back(q);
    single.labels.push_back("q");
    CHECK(generic_quadric_rank(single, rng) == 2);
}

TEST_CASE("frame independence of filtration and generic rank") {
    Rng rng(83);
    for (const char* spec : {"veronese:2,2", "segre:1,2"}) {
        auto X = parse_variety_spec(spec);
        RatVec p = X.general_point(rng, 3);
        auto reference = jet_tower(X, p, 3);
        auto ref_rank = generic_quadric_rank(reference.second_ff(), rng);
        for (int trial = 0; trial < 5; ++trial) {
            MatRat g = random_invertible(X.ambient_dim + 1, rng);
            auto tower = jet_tower(X, p, 3, &g);
            CHECK(tower.filtration == reference.filtration);
            CHECK(generic_quadric_rank(tower.second_ff(), rng) == ref_rank);
        }
    }
}

TEST_CASE("prolongation property at k = 3") {
    for (const char* spec :
         {"veronese:1,3", "veronese:2,3", "grassmannian:3,6", "segre:1,1,1"}) {
        auto X = parse_variety_spec(spec);
        auto tower = tower_at_random_point(X, 3, 91, 2);
        auto A = tower.second_ff();
        for (const auto& cubic : tower.fundamental_form_span(3))
            CHECK(in_prolongation(A, cubic));
    }
}

TEST_CASE("hermitian symmetric equality |FF^3| = |II|^(1)") {
    for (const char* spec : {"grassmannian:3,6", "spinor:6"}) {
        auto X = parse_variety_spec(spec);
        auto tower = tower_at_random_point(X, 3, 93, 2);
        auto A = tower.second_ff();
        CHECK(tower.fundamental_form_span(3).size() == prolongation_dim(A));
    }
}

TEST_CASE("strictness can fail off the hermitian symmetric list") {
    // the veronese v3(P^2) has FF^3 of dimension 4 but a larger prolongation
    auto tower = tower_at_random_point(veronese(2, 3), 3, 95);
    auto A = tower.second_ff();  // all of S^2 on a 2-dim tangent space
    CHECK(tower.fundamental_form_span(3).size() == 4);
    CHECK(prolongation_dim(A) == 4);  // S^3 of dim 2 space: prolongation fills
}

TEST_CASE("base-locus lemma: forced singular locus") {
    // systems of a quadrics on C^n with a k-plane in the base locus and
    // a (n - k) < k must have a nonzero singular locus
    Rng rng(101);
    const std::size_t n = 5, k = 4;
    const std::size_t a = 3;  // a (n - k) = 3 < 4 = k
    for (int trial = 0; trial < 50; ++trial) {
        QuadricSystem A;
        A.tangent_dim = n;
        for (std::size_t i = 0; i < a; ++i) {
            MatRat q(n, n);
            // vanishing on span(e_0..e_{k-1}) forces a zero upper-left block
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = r; c < n; ++c) {
                    if (r < k && c < k) continue;
                    q(r, c) = rng.next_rat(9);
                    q(c, r) = q(r, c);
                }
            A.quadrics.push_back(q);
            A.labels.push_back("q" + std::to_string(i));
        }
        CHECK(!singloc(A).empty());
    }
}

TEST_CASE("refined cubic of severi(2): degenerate secant forces zero") {
    auto X = severi(2);
    Rng rng(111);
    RatVec p = X.general_point(rng, 3);
    auto tower = jet_tower(X, p, 3);
    auto A = tower.second_ff();
    RatVec v = ii_generic_vector(A, rng);
    auto rc = refined_cubic(X, p, v, rng);
    CHECK(rc.ann_basis.size() == 1);
    CHECK(rc.quotient_dim == 1);
    CHECK(rc.iii_zero);
}

TEST_CASE("refined cubic of the twisted cubic is nonzero") {
    auto X = veronese(1, 3);
    Rng rng(121);
    RatVec p = X.general_point(rng, 3);
    auto A = jet_tower(X, p, 3).second_ff();
    RatVec v = ii_generic_vector(A, rng);
    auto rc = refined_cubic(X, p, v, rng);
    CHECK(rc.quotient_dim == 1);
    CHECK(!rc.iii_zero);
}

TEST_CASE("refined cubic of a graph of two generic quadrics") {
    // II_v is onto for generic v, so the refined cubic lives in a zero
    // quotient; consistent with the secant variety filling P^4
    Rng rng(131);
    PolyVec quadrics;
    for (int i = 0; i < 2; ++i) {
        MPoly q(2);
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t c = r; c < 2; ++c) {
                Expo e(2, 0);
                e[r] += 1;
                e[c] += 1;
                q.add_term(e, rng.next_rat_nonzero(5));
            }
        quadrics.push_back(q);
    }
    auto X = graph_variety(2, quadrics);
    RatVec p = X.general_point(rng, 3);
    auto A = jet_tower(X, p, 3).second_ff();
    RatVec v = ii_generic_vector(A, rng);
    auto rc = refined_cubic(X, p, v, rng);
    CHECK(rc.ann_basis.empty());
    CHECK(rc.quotient_dim == 0);
    CHECK(rc.iii_zero);  // the quotient target is zero
    CHECK(rc.sa_basis.size() == 2);
}

TEST_CASE("non-general points are rejected") {
    auto X = veronese(1, 3);
    // the twisted cubic chart is general everywhere; use a degenerate graph
    MPoly cubic(1);
    cubic.add_term(Expo{3}, rat(1));
    auto Y = tangent_developable(veronese(1, 3));
    RatVec bad{rat(0), rat(0)};  // on the curve itself the frame degenerates
    CHECK_THROWS(jet_tower(Y, bad, 2));
    (void)X;
}

TEST_CASE("the osculating filtration stabilizes at zero") {
    for (const char* spec : {"veronese:2,2", "segre:1,2", "spinor:4"}) {
        auto X = parse_variety_spec(spec);
        Rng rng(303);
        auto tower = jet_tower(X, X.general_point(rng, 3), 4);
        bool seen_zero = false;
        for (auto a : tower.filtration) {
            if (seen_zero) CHECK(a == 0);
            if (a == 0) seen_zero = true;
        }
    }
}

TEST_CASE("refined cubic rejects vectors that are not II-generic") {
    auto X = severi(2);
    Rng rng(401);
    RatVec p = X.general_point(rng, 3);
    RatVec zero(X.source_dim, Rat(0));
    CHECK_THROWS(refined_cubic(X, p, zero, rng));
}
