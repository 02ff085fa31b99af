/**
 * @file test_shuffle.cpp
 * @brief Shuffle products, generator families, Newton conversions, and
 *        staircase reduction against hand-computed anchors.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shufkit/shuffle.hpp"

using namespace shufkit;
using ML = MultiLaurent;

namespace {

/// zeta(u) = (1-u q1)(1-u q2)/((1-u)(1-u q)) as a truncated series in u.
TruncSeries zetaSeries(int order) {
    TruncSeries geo("u", order), geoq("u", order);
    for (int i = 0; i <= order; ++i) {
        geo[i] = FElem(1);
        geoq[i] = FElem::qpow(i);
    }
    TruncSeries num("u", order);
    num[0] = FElem(1);
    num[1] = -(FElem::q1() + FElem::q2());
    if (order >= 2) num[2] = FElem::qpow(1);
    return num * geo * geoq;
}

}  // namespace

TEST_CASE("zeta evaluation and inverse series") {
    CHECK(zetaAt(FElem::q1(-1)).isZero());
    CHECK(zetaAt(FElem::q2(-1)).isZero());
    CHECK_THROWS_AS(zetaAt(FElem(1)), PoleHit);
    CHECK_THROWS_AS(zetaAt(FElem::qpow(-1)), PoleHit);

    // zetaInvSeries really is the multiplicative inverse of zeta's expansion.
    TruncSeries prod = zetaSeries(6) * zetaInvSeries(6);
    CHECK(prod[0] == FElem(1));
    for (int i = 1; i <= 6; ++i) CHECK(prod[i].isZero());
    CHECK(zetaInvSeries(1)[1] == -FElem::delta());
}

TEST_CASE("symZeta matches a direct arity-2 expansion") {
    // Sym[z1 prod zeta] cleared over D_2 by hand:
    // rho*C*(q z2 - z1)*(-1) + swap, divided by (z2 - z1).
    ML rho = ML::var(2, 0);
    ShufForm f = symZeta(rho);
    ML c = (ML::var(2, 1) - ML::var(2, 0) * FElem::q1()) *
           (ML::var(2, 1) - ML::var(2, 0) * FElem::q2());
    ML t = -(rho * c) * (ML::var(2, 1) * FElem::qpow(1) - ML::var(2, 0));
    std::vector<int> swp{1, 0};
    ML u = (rho * c).applyPerm(swp) * (ML::var(2, 0) * FElem::qpow(1) - ML::var(2, 1));
    auto num = (t + u).divExact(ML::var(2, 1) - ML::var(2, 0));
    REQUIRE(num.has_value());
    CHECK(f.num() == *num);
    CHECK(f.numIsSymmetric());
}

TEST_CASE("arity-1 products agree with symZeta of the dual monomial") {
    ShufElem a = genE({2}), b = genE({3});
    ShufElem p = a * b;
    const auto& comp = p.sole();
    CHECK(p.comps().begin()->first == ShufElem::Key{2, 5});
    ML rho = ML::mono(2, {2, 3}, FElem(1));
    CHECK(comp.form == symZeta(rho));
    REQUIRE(comp.dual.has_value());
    CHECK(*comp.dual == rho);

    // The degree-1 commutator display: [E_{(0)}, E_{(1)}] equals Delta times
    // the staircase generator of total degree 1.
    ShufElem e0 = genE({0}), e1 = genE({1});
    CHECK(commutator(e0, e1) == genE({0, 1}) * FElem::delta());
}

TEST_CASE("small-triangle anchors in E_{k,n} labels") {
    // Clockwise empty triangles; bracket order [lower slope, higher slope].
    CHECK(commutator(genEkn(1, 0), genEkn(1, 1)) == genEkn(2, 1) * FElem::delta());
    // (1,-1),(1,1) spans a triangle with (1,0) on an edge, so the bracket
    // picks up an ordered-product term: Delta (E_{1,0}^2 - (1+q^{-1}) E_{2,0}).
    ShufElem e10 = genEkn(1, 0);
    CHECK(commutator(genEkn(1, -1), genEkn(1, 1)) ==
          (e10 * e10 - genEkn(2, 0) * (FElem(1) + FElem::qpow(-1))) * FElem::delta());
    CHECK(commutator(genEkn(1, 0), genEkn(2, 1)) == genEkn(3, 1) * FElem::delta());
    CHECK(commutator(genEkn(2, 1), genEkn(1, 1)) == genEkn(3, 2) * FElem::delta());

    // Eq. 2.15 at s = 2: [E_{1,0}, E_{2,2}] =
    // Delta (E_{1,1} E_{2,1} - (q1+q2) E_{3,2}).
    ShufElem rhs = (genEkn(1, 1) * genEkn(2, 1) -
                    genEkn(3, 2) * (FElem::q1() + FElem::q2())) *
                   FElem::delta();
    CHECK(commutator(genEkn(1, 0), genEkn(2, 2)) == rhs);
}

TEST_CASE("shuffle product is associative and graded") {
    ShufElem a = genE({1}), b = genE({0}), c = genE({2});
    CHECK((a * b) * c == a * (b * c));

    ShufElem d = genE({1, 0});
    ShufElem p = (a + b) * d;
    REQUIRE(p.comps().size() == 2);
    CHECK(p.comps().count({3, 1}) == 1);
    CHECK(p.comps().count({3, 2}) == 1);

    // Scalar components multiply through.
    ShufElem s = ShufElem::scalar(FElem::qpow(1));
    CHECK(s * a == a * FElem::qpow(1));
    CHECK(a * s == a * FElem::qpow(1));
}

TEST_CASE("staircase exponents and E_{k,n}") {
    CHECK(staircaseD(2, 1) == std::vector<int>{0, 1});
    CHECK(staircaseD(2, 2) == std::vector<int>{0, 2});
    CHECK(staircaseD(3, 2) == std::vector<int>{0, 1, 1});
    CHECK(staircaseD(1, 5) == std::vector<int>{5});
    CHECK(staircaseD(2, -1) == std::vector<int>{-1, 0});
    CHECK(staircaseD(3, 0) == std::vector<int>{-1, 0, 1});

    // gcd prefactor (-q)^{s-1}: E_{2,2} = -q * genE((0,2)).
    CHECK(genEkn(2, 2) == genE({0, 2}) * (-FElem::qpow(1)));
    CHECK(genEkn(2, 1) == genE({0, 1}));

    // Same-slope generators commute.
    CHECK(commutator(genEkn(1, 1), genEkn(2, 2)).isZero());
    CHECK(commutator(genEkn(1, 0), genEkn(2, 0)).isZero());
}

TEST_CASE("T generators") {
    CHECK(genT(0, 0) == ShufElem::scalar(FElem(1)));
    CHECK(genT(0, 3).isZero());
    CHECK(genT(1, 2) == -genE({2}));
    CHECK(genT(1, 3) == genE({3}));
    CHECK(genT(2, 1) == genE({0, 1}));
}

TEST_CASE("Newton conversion P/H/Q along slope (1,1)") {
    auto p = newtonConvert(NewtonFamily::P, 1, 1, 3);
    ShufElem e1 = genEkn(1, 1), e2 = genEkn(2, 2), e3 = genEkn(3, 3);
    CHECK(p[0] == e1);
    CHECK(p[1] == e1 * e1 - e2 * FElem(2));
    CHECK(p[2] == e1 * e1 * e1 - (e1 * e2 + e2 * e1) * FElem::ratio(3, 2) + e3 * FElem(3));

    auto h = newtonConvert(NewtonFamily::H, 1, 1, 2);
    CHECK(h[0] == e1);
    CHECK(h[1] == e1 * e1 - e2);

    auto q = newtonConvert(NewtonFamily::Q, 1, 1, 2);
    CHECK(q[0] == p[0] * (FElem(1) - FElem::qpow(-1)));

    // Round trip through the inverse recurrence.
    auto e = newtonEFromP(p);
    CHECK(e[0] == e1);
    CHECK(e[1] == e2);
    CHECK(e[2] == e3);
}

TEST_CASE("explicit P-forms") {
    // s = 1: the t-sum collapses and P equals the staircase E.
    CHECK(genPExplicit(1, 2, 1) == genEkn(2, 1));
    CHECK(genPExplicit(1, 3, 2) == genEkn(3, 2));
    // Both presentations agree where s > 1.
    CHECK(genPExplicit(1, 2, 2) == genPExplicit(2, 2, 2));
    // And they match the Newton-recurrence P along the slope, s up to 3.
    auto p = newtonConvert(NewtonFamily::P, 1, 1, 3);
    CHECK(genPExplicit(1, 2, 2) == p[1]);
    CHECK(genPExplicit(2, 3, 3) == p[2]);
    auto p0 = newtonConvert(NewtonFamily::P, 1, 0, 2);
    CHECK(genPExplicit(1, 2, 0) == p0[1]);
    auto pm = newtonConvert(NewtonFamily::P, 1, -1, 2);
    CHECK(genPExplicit(2, 2, -2) == pm[1]);
}

TEST_CASE("staircase reduction certificates") {
    // Already a staircase: trivial certificate.
    StaircaseCert c0 = staircaseReduce({0, 1});
    CHECK(c0.a == 0);
    CHECK(c0.parts.empty());

    // d = (1,0): one right move, a = 1, witness z1.
    StaircaseCert c1 = staircaseReduce({1, 0});
    CHECK(c1.a == 1);
    REQUIRE(c1.parts.size() == 1);
    CHECK(c1.parts[0].first == 0);
    CHECK(c1.parts[0].second == ML::var(2, 0));

    // Left move: d = (-1, 2) reduces to (0, 1) with a = -1.
    StaircaseCert c2 = staircaseReduce({-1, 2});
    CHECK(c2.a == -1);
    REQUIRE(c2.parts.size() == 1);
    CHECK(c2.parts[0].second == ML::var(2, 1) * (-FElem::qpow(-1)));

    // A longer mixed reduction is internally verified by re-expansion; just
    // exercise it and sanity-check the exponent bookkeeping.
    StaircaseCert c3 = staircaseReduce({3, -1, 1});
    CHECK(c3.a == 4);  // three right moves at the first wall, one at the second
}

TEST_CASE("symKernel with assorted interior parameters") {
    // beta = 0 turns the interior chain into prod_{i<k} z_i, which cancels
    // the compensating head factors exactly: symKernel(g, 0) == symZeta(g).
    ML g = ML::mono(2, {1, 1}, FElem(1));
    CHECK(symKernel(g, FElem(0)) == symZeta(g));

    // Numerator degree of E_{(d)} is n + k(k-1).
    ShufForm f = genE({0, 1, 2}).sole().form;
    for (const auto& t : f.num().terms()) {
        int deg = 0;
        for (int e : t.first) deg += e;
        CHECK(deg == 3 + 6);
    }
    CHECK(f.numIsSymmetric());
}
