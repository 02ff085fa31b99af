/**
 * @file test_symrat.cpp
 * @brief Unit tests for multivariate Laurent arithmetic, canonical shuffle
 *        fractions, and region-ordered constant terms.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "shufkit/symrat.hpp"

using namespace shufkit;

namespace {

MultiLaurent z(int k, int i, int p = 1) { return MultiLaurent::var(k, i, p); }

}  // namespace

TEST_CASE("MultiLaurent ring arithmetic") {
    auto a = z(2, 0) + z(2, 1);                      // z1 + z2
    auto b = z(2, 0) - z(2, 1);                      // z1 - z2
    auto prod = a * b;                               // z1^2 - z2^2
    CHECK(prod == z(2, 0, 2) - z(2, 1, 2));
    CHECK((a + b) == z(2, 0) * FElem(2));
    CHECK((a - a).isZero());
    CHECK(a.shifted({-1, 0}) == MultiLaurent::one(2) + z(2, 1) * z(2, 0, -1));

    // Permutation action: swap z1 <-> z2 fixes a, negates b.
    std::vector<int> swp{1, 0};
    CHECK(a.applyPerm(swp) == a);
    CHECK(b.applyPerm(swp) == -b);
    CHECK(a.isSymmetric());
    CHECK_FALSE(b.isSymmetric());
}

TEST_CASE("MultiLaurent exact division") {
    auto a = z(3, 0) + z(3, 1) + z(3, 2);
    auto b = z(3, 0) * z(3, 1) - z(3, 2, 2);
    auto p = a * b;
    auto q = p.divExact(b);
    REQUIRE(q.has_value());
    CHECK(*q == a);
    CHECK_FALSE((p + MultiLaurent::one(3)).divExact(b).has_value());

    // Laurent divisor with negative exponents.
    auto c = z(2, 0, -1) + z(2, 1, 2);
    auto r = c * (z(2, 0) + MultiLaurent::one(2));
    CHECK(*r.divExact(c) == z(2, 0) + MultiLaurent::one(2));

    // Vandermonde-style division: antisymmetric / antisymmetric.
    auto vand = (z(3, 0) - z(3, 1)) * (z(3, 0) - z(3, 2)) * (z(3, 1) - z(3, 2));
    auto sym = symmetrize(z(3, 0, 2) * z(3, 1));
    CHECK((vand * sym).divExact(vand).value() == sym);
}

TEST_CASE("substitution and evaluation") {
    auto f = z(2, 0, 2) * z(2, 1, -1);
    // z1 -> q1 * z2
    auto g = f.substVar(0, FElem::q1(), {0, 1});
    CHECK(g == z(2, 1) * FElem::q1(2));
    std::vector<FElem> vals{FElem::q1(), FElem::q2()};
    CHECK(f.evalAll(vals) == FElem::q1(2) / FElem::q2());
    CHECK_THROWS_AS(z(1, 0, -1).evalAll(std::vector<FElem>{FElem(0)}), PoleHit);
    CHECK(f.invertVars() == z(2, 0, -2) * z(2, 1));
}

TEST_CASE("symmetrize is the plain S_k sum") {
    CHECK(symmetrize(z(1, 0, 5)) == z(1, 0, 5));
    CHECK(symmetrize(z(2, 0)) == z(2, 0) + z(2, 1));
    // Sym twice = k! * Sym once.
    auto f = z(3, 0, 2) * z(3, 1);
    CHECK(symmetrize(symmetrize(f)) == symmetrize(f) * FElem(6));
}

TEST_CASE("ShufForm canonical denominator and phi evaluation") {
    auto d2 = ShufForm::Dk(2);
    CHECK(d2.isSymmetric());
    CHECK(d2 == (z(2, 0) * FElem::qpow(1) - z(2, 1)) * (z(2, 1) * FElem::qpow(1) - z(2, 0)));

    // k=1: D_1 = 1 and phi(z1^d) = 1.
    CHECK(shufCanonical(z(1, 0, 3)).evalPhi() == FElem(1));

    // The section-2.1 product display: Delta(1-q) z1 z2 (z1+z2) / ((z1-z2 q)(z2-z1 q))
    // is a valid ShufForm (its denominator is -D_2 up to the sign convention).
    auto num = z(2, 0) * z(2, 1) * (z(2, 0) + z(2, 1)) * FElem::delta() * (FElem(1) - FElem::qpow(1));
    auto den = (z(2, 0) - z(2, 1) * FElem::qpow(1)) * (z(2, 1) - z(2, 0) * FElem::qpow(1));
    auto sf = shufCanonical(num, den);
    CHECK(sf.numIsSymmetric());
    // den equals D_2 exactly: (z1 - z2 q)(z2 - z1 q) = (z1 q - z2)(z2 q - z1).
    CHECK(sf.num() == num);

    // 1/(z1 - z2): antisymmetric pole, not in the algebra.
    CHECK_THROWS_AS(shufCanonical(MultiLaurent::one(2), z(2, 0) - z(2, 1)), NotInAlgebra);

    // zeta(z2/z1) at z1=1, z2=q1^{-1} vanishes: numerator factor (z1 - z2 q1).
    auto zetaNum = (z(2, 0) - z(2, 1) * FElem::q1()) * (z(2, 0) - z(2, 1) * FElem::q2());
    std::vector<FElem> phiVals{FElem(1), FElem::q1(-1)};
    CHECK(zetaNum.evalAll(phiVals).isZero());
}

TEST_CASE("region constant term: ordered chain") {
    RegionOrder ord = RegionOrder::chain(2);
    std::vector<int> victims{0, 1};

    // Pure monomial: CT[z^{a-b}] = delta_{a,b}.
    {
        GeomFrac f(z(2, 0, 2) * z(2, 1, -2));
        CHECK(f.fullConstantTerm(ord, victims) == FElem(0));
    }
    {
        GeomFrac f(MultiLaurent::one(2));
        CHECK(f.fullConstantTerm(ord, victims) == FElem(1));
    }

    // 1/(1 - z2/z1) with |z1| >> |z2|: constant term 1.
    {
        GeomFrac f(MultiLaurent::one(2));
        f.divideBinomial(ord, FElem(1), {0, 0}, FElem(1), {-1, 1});
        CHECK(f.fullConstantTerm(ord, victims) == FElem(1));
    }

    // (z1/z2) / (1 - z2/z1): the j=1 series term restores the balance.
    {
        GeomFrac f(z(2, 0) * z(2, 1, -1));
        f.divideBinomial(ord, FElem(1), {0, 0}, FElem(1), {-1, 1});
        CHECK(f.fullConstantTerm(ord, victims) == FElem(1));
    }

    // Geometric series with a q-coefficient: CT[(z1/z2) / (1 - q z2/z1)] = q.
    {
        GeomFrac f(z(2, 0) * z(2, 1, -1));
        f.divideBinomial(ord, FElem(1), {0, 0}, FElem::qpow(1), {-1, 1});
        CHECK(f.fullConstantTerm(ord, victims) == FElem::qpow(1));
    }

    // Multiplicity two: coefficient of u^2 in (1-u)^{-2} is 3.
    {
        GeomFrac f(z(2, 0, 2) * z(2, 1, -2));
        f.divideBinomial(ord, FElem(1), {0, 0}, FElem(1), {-1, 1}, 2);
        CHECK(f.fullConstantTerm(ord, victims) == FElem(3));
    }

    // Dominance resolution: dividing by (q z1 - z2) absorbs q z1 and leaves
    // the small factor (1 - z2/(q z1)).
    {
        GeomFrac f(z(2, 0) * FElem::qpow(1));
        f.divideBinomial(ord, FElem::qpow(1), {1, 0}, FElem(1), {0, 1});
        CHECK(f.fullConstantTerm(ord, victims) == FElem(1));
    }

    // <E_(1), E_(1)> k=1 instance: CT[z * z^{-1}] = 1.
    {
        GeomFrac f(z(1, 0) * z(1, 0, -1));
        std::vector<int> v1{0};
        CHECK(f.fullConstantTerm(RegionOrder::chain(1), v1) == FElem(1));
    }
}

TEST_CASE("region constant term: q/p magnitude flags") {
    // Equal z-magnitudes: (1 - q1 z2/z1) expands with z2/z1 ~ 1 and |q1| > 1,
    // so the large monomial is q1 z2/z1.
    RegionOrder ord = RegionOrder::equal(3, 2);
    GeomFrac f(z(3, 0, -1) * z(3, 1) * FElem::q1(-1) * FElem(-1));
    // divide by (1 - q1 z2/z1) = -(q1 z2/z1)(1 - (1/q1) z1/z2)
    f.divideBinomial(ord, FElem(1), {0, 0, 0}, FElem::q1(), {-1, 1, 0});
    // f = (-1/q1)(z2/z1) / (1 - q1 z2/z1) = (1/q1^2) sum_j (z1/(q1 z2))^j;
    // the j=0 head is the constant term.
    std::vector<int> victims{0, 1};
    CHECK(f.fullConstantTerm(ord, victims) == FElem::q1(-2));

    // p is smaller than any q-power: (1 - q2^{-3} p) expands directly, and
    // CT_p[q2^3 p^{-1} / (1 - q2^{-3} p)] picks the j=1 series term.
    GeomFrac g(z(3, 2, -1) * FElem::q2(3));
    g.divideBinomial(ord, FElem(1), {0, 0, 0}, FElem::q2(-3), {0, 0, 1});
    std::vector<int> vp{2};
    CHECK(g.fullConstantTerm(ord, vp) == FElem(1));

    // Balanced magnitudes with a non-monomial coefficient are ambiguous.
    GeomFrac h(MultiLaurent::one(3));
    CHECK_THROWS_AS(
        h.divideBinomial(ord, FElem(1), {0, 0, 0}, FElem(1) + FElem::qpow(1), {-1, 1, 0}),
        AmbiguousDirection);
}

TEST_CASE("homogeneous split and grouping") {
    auto f = z(2, 0, 2) + z(2, 0) * z(2, 1) + z(2, 1, 3);
    auto h = f.homogeneous();
    REQUIRE(h.size() == 2);
    CHECK(h.at(2) == z(2, 0, 2) + z(2, 0) * z(2, 1));
    CHECK(h.at(3) == z(2, 1, 3));

    auto by = f.byVar(1);
    CHECK(by.at(0) == z(2, 0, 2));
    CHECK(by.at(1) == z(2, 0));
    CHECK(by.at(3) == MultiLaurent::one(2));
}
