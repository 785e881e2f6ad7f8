#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdgeo/catalog.hpp"
#include "pdgeo/clifford.hpp"
#include "pdgeo/error.hpp"
#include "pdgeo/jets.hpp"
#include "pdgeo/rng.hpp"

using namespace pdgeo;

namespace {

CliffordElem random_elem(std::size_t m, Rng& rng) {
    CliffordElem e;
    e.dim = m;
    for (int t = 0; t < 6; ++t)
        e.add(static_cast<std::uint32_t>(rng.next_below(1u << m)),
              rng.next_rat(5));
    return e;
}

// a vector of unit Q-length in the hyperbolic form
RatVec random_unit_vector(std::size_t m, Rng& rng) {
    while (true) {
        RatVec u = rng.next_rat_vector(m, 5);
        if (sgn(u[0]) == 0) continue;
        // adjust the pairing partner so that Q(u, u) = 2 sum u_i u_{m/2+i} = 1
        Rat partial = 0;
        for (std::size_t i = 1; i < m / 2; ++i) partial += u[i] * u[m / 2 + i];
        u[m / 2] = (Rat(1) / 2 - partial) / u[0];
        return u;
    }
}

Rat qform(const MatRat& Q, const RatVec& x, const RatVec& y) {
    return dot(Q.apply(x), y);
}

}  // namespace

TEST_CASE("unit element and squares") {
    auto Q = hyperbolic_form(4);
    auto one = CliffordElem::scalar(4, rat(1));
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        auto alpha = random_elem(4, rng);
        CHECK(clifford_mul(one, alpha, Q) == alpha);
        CHECK(clifford_mul(alpha, one, Q) == alpha);
    }
    // x o x = Q(x, x) 1 for vectors
    for (int t = 0; t < 20; ++t) {
        RatVec x = rng.next_rat_vector(4, 7);
        auto sq = clifford_mul(CliffordElem::vector(x), CliffordElem::vector(x), Q);
        CHECK(sq == CliffordElem::scalar(4, qform(Q, x, x)));
    }
}

TEST_CASE("fundamental relation on all basis pairs, m = 2, 4, 6, 8") {
    for (std::size_t m : {2, 4, 6, 8}) {
        auto Q = hyperbolic_form(m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                RatVec ei(m, Rat(0)), ej(m, Rat(0));
                ei[i] = 1;
                ej[j] = 1;
                auto anti =
                    clifford_mul(CliffordElem::vector(ei), CliffordElem::vector(ej), Q) +
                    clifford_mul(CliffordElem::vector(ej), CliffordElem::vector(ei), Q);
                CHECK(anti == CliffordElem::scalar(m, Rat(2) * Q(i, j)));
            }
    }
}

TEST_CASE("orthogonal vectors anticommute") {
    auto Q = hyperbolic_form(4);
    RatVec e1(4, Rat(0)), e2(4, Rat(0));
    e1[0] = 1;
    e2[1] = 1;  // Q(e1, e2) = 0 in the hyperbolic basis
    auto ab = clifford_mul(CliffordElem::vector(e1), CliffordElem::vector(e2), Q);
    auto ba = clifford_mul(CliffordElem::vector(e2), CliffordElem::vector(e1), Q);
    CHECK(ab == ba * rat(-1));
}

TEST_CASE("associativity on random triples") {
    Rng rng(17);
    for (std::size_t m : {4, 6}) {
        auto Q = hyperbolic_form(m);
        for (int t = 0; t < 50; ++t) {
            auto a = random_elem(m, rng), b = random_elem(m, rng),
                 c = random_elem(m, rng);
            CHECK(clifford_mul(clifford_mul(a, b, Q), c, Q) ==
                  clifford_mul(a, clifford_mul(b, c, Q), Q));
        }
    }
}

TEST_CASE("parity grading is respected") {
    Rng rng(19);
    auto Q = hyperbolic_form(6);
    auto parity_part = [](const CliffordElem& e, int parity) {
        CliffordElem out;
        out.dim = e.dim;
        for (const auto& [mask, c] : e.coeffs)
            if (__builtin_popcount(mask) % 2 == parity) out.coeffs[mask] = c;
        return out;
    };
    for (int t = 0; t < 20; ++t) {
        auto a = parity_part(random_elem(6, rng), 0);
        auto b = parity_part(random_elem(6, rng), 0);
        auto prod = clifford_mul(a, b, Q);
        for (const auto& [mask, c] : prod.coeffs)
            CHECK(__builtin_popcount(mask) % 2 == 0);
        auto odd = parity_part(random_elem(6, rng), 1);
        auto mixed = clifford_mul(a, odd, Q);
        for (const auto& [mask, c] : mixed.coeffs)
            CHECK(__builtin_popcount(mask) % 2 == 1);
    }
}

TEST_CASE("reversal is an anti-automorphism") {
    Rng rng(23);
    auto Q = hyperbolic_form(4);
    for (int t = 0; t < 30; ++t) {
        auto a = random_elem(4, rng), b = random_elem(4, rng);
        CHECK(reverse(clifford_mul(a, b, Q)) ==
              clifford_mul(reverse(b), reverse(a), Q));
    }
    // on vectors the involution is minus the identity
    RatVec x = rng.next_rat_vector(4, 5);
    CHECK(reverse(CliffordElem::vector(x)) == CliffordElem::vector(x) * rat(-1));
}

TEST_CASE("rho of a unit vector is a reflection") {
    auto Q = hyperbolic_form(4);
    Rng rng(29);
    RatVec u = random_unit_vector(4, rng);
    REQUIRE(qform(Q, u, u) == 1);
    auto g = CliffordElem::vector(u);
    // u itself is negated
    RatVec image = rho(g, u, Q);
    for (std::size_t i = 0; i < 4; ++i) CHECK(image[i] == -u[i]);
    // a Q-orthogonal vector is fixed
    RatVec w(4, Rat(0));
    w[1] = 1;
    w[0] = -qform(Q, u, w);  // hmm: adjust w so Q(u, w) = 0
    // recompute a genuinely orthogonal vector
    w = RatVec(4, Rat(0));
    w[1] = 1;
    RatVec correction = u;
    Rat c = qform(Q, u, w);  // Q(u, w)
    // w' = w - c u / Q(u,u)
    for (std::size_t i = 0; i < 4; ++i) w[i] -= c * u[i];
    REQUIRE(sgn(qform(Q, u, w)) == 0);
    RatVec fixed = rho(g, w, Q);
    CHECK(fixed == w);
    // rho(1) is the identity
    auto one = CliffordElem::scalar(4, rat(1));
    RatVec v = rng.next_rat_vector(4, 7);
    CHECK(rho(one, v, Q) == v);
}

TEST_CASE("rho of even products preserves Q") {
    Rng rng(31);
    for (std::size_t m : {4, 6}) {
        auto Q = hyperbolic_form(m);
        for (int t = 0; t < 25; ++t) {
            auto g = CliffordElem::scalar(m, rat(1));
            for (int f = 0; f < 2; ++f)
                g = clifford_mul(
                    g, CliffordElem::vector(random_unit_vector(m, rng)), Q);
            RatVec x = rng.next_rat_vector(m, 7);
            RatVec y = rng.next_rat_vector(m, 7);
            RatVec gx = rho(g, x, Q), gy = rho(g, y, Q);
            CHECK(qform(Q, gx, gy) == qform(Q, x, y));
        }
    }
}

TEST_CASE("spin action: kernel of L_1 is the complementary null half") {
    auto Q = hyperbolic_form(6);
    auto one = CliffordElem::scalar(6, rat(1));
    // v in U': image vanishes
    RatVec vprime(6, Rat(0));
    vprime[4] = 3;
    CHECK(spin_action(vprime, one, Q).is_zero());
    // v = u in U: the action is u itself (degree-1 part of u o 1)
    RatVec u(6, Rat(0));
    u[1] = 5;
    auto img = spin_action(u, one, Q);
    CHECK(img == CliffordElem::vector(u));
    // results always have odd parity over U
    Rng rng(37);
    CliffordElem alpha;
    alpha.dim = 6;
    alpha.add(0b000011, rat(2));
    alpha.add(0, rat(1));
    for (int t = 0; t < 10; ++t) {
        RatVec v = rng.next_rat_vector(6, 5);
        auto out = spin_action(v, alpha, Q);
        for (const auto& [mask, c] : out.coeffs) {
            CHECK(__builtin_popcount(mask) % 2 == 1);
            CHECK((mask & 0b111000) == 0);
        }
    }
    // a non-null split is rejected
    MatRat bad = MatRat::identity(6);
    CHECK_THROWS(spin_action(u, one, bad));
}

TEST_CASE("clifford module from the severi(2) second fundamental form") {
    Rng rng(41);
    auto X = severi(2);
    auto A = second_ff(X, rng, 3);
    auto data = clifford_module_from_II(A, rng);
    CHECK(data.ann_basis.size() == 1);
    CHECK(data.ker_iiv.size() == 1);    // n - (a - 1) = 4 - 3
    CHECK(data.psing_basis.size() == 2);  // {v, ker II_v}
    CHECK(data.module_dim == 2);          // a - 2
    CHECK(data.module_maps.size() == 1);
}

TEST_CASE("clifford module from the severi(4) second fundamental form") {
    Rng rng(43);
    auto X = severi(4);
    auto A = second_ff(X, rng, 3);
    auto data = clifford_module_from_II(A, rng);
    CHECK(data.ker_iiv.size() == 3);     // n - (a - 1) = 8 - 5
    CHECK(data.psing_basis.size() == 4);  // {v, ker II_v}
    CHECK(data.module_dim == 4);          // a - 2
    // the relation was verified inside the call; spot check one instance
    MatRat anti = data.module_maps[0] * data.module_maps[1] +
                  data.module_maps[1] * data.module_maps[0];
    CHECK(anti == MatRat::identity(4).scaled(data.qv(0, 1) * rat(-2)));
}

TEST_CASE("generic systems have no critical tangential defect") {
    Rng rng(47);
    QuadricSystem A;
    A.tangent_dim = 4;
    for (int i = 0; i < 3; ++i) {
        MatRat q(4, 4);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = r; c < 4; ++c) {
                q(r, c) = rng.next_rat(9);
                q(c, r) = q(r, c);
            }
        A.quadrics.push_back(q);
        A.labels.push_back("q" + std::to_string(i));
    }
    CHECK_THROWS_WITH_AS(clifford_module_from_II(A, rng),
                         "clifford.clifford_module_from_II: no critical "
                         "tangential defect",
                         Error);
}
