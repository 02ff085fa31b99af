/**
 * @file pairing.hpp
 * @brief The bilinear pairing on the shuffle algebra in both contour
 *        presentations, orthogonal decomposition into ordered slope
 *        monomials, and certified structure constants.
 *
 * The pairing of R with Sym[rho * prod_{i<j} zeta(z_i/z_j)] is the constant
 * term of R * rho(1/z) / prod_{i<j} zeta(z_i/z_j) in the nested region
 * |z_0| >> ... >> |z_{k-1}|, extended F-linearly in the second argument.
 * The equal-contour route computes the same number as 1/k! times an
 * equal-radius constant term with an auxiliary small symbol p that is
 * substituted p -> q at the end; agreement of the two routes is a theorem
 * and doubles as a cross-check of the whole region calculus.
 */
#pragma once

#include "shufkit/shuffle.hpp"

namespace shufkit {

struct SubstitutionPole : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ReconstructionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IntegralityFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// sign of slope(a) - slope(b) where slope(k, n) = n/k, k >= 1.
int cmpSlope(const GenIndex& a, const GenIndex& b);

/// Ordered monomial E_{k1,n1}...E_{kt,nt} (or P_...) with slopes
/// non-decreasing left to right; equal-slope factors commute and are kept
/// with k increasing.
struct SlopeMonomial {
    enum class Family { E, P };
    Family family = Family::E;
    std::vector<GenIndex> factors;

    friend auto operator<=>(const SlopeMonomial&, const SlopeMonomial&) = default;

    int totalArity() const;
    int totalDegree() const;
    std::string label() const;  // e.g. "E_{1,0} E_{2,1}"
};

/// All ordered monomials of bidegree (k, n) whose factor slopes lie in
/// [lo, hi] (slope bounds given as GenIndex fractions n/k).  With strict set,
/// slopes must strictly increase (the W-generator enumeration).
std::vector<SlopeMonomial> enumerateOrdered(int k, int n, const GenIndex& lo, const GenIndex& hi,
                                            SlopeMonomial::Family fam, bool strict = false);

/// Attach dual data rho (R = Sym[rho * prod zeta]) to every component that
/// lacks it, by solving a linear system over a growing exponent box.
ShufElem withDual(const ShufElem& e);

/// E_{k,n} / P_{k,n} with dual data attached (cached).
ShufElem genEknDual(int k, int n);
ShufElem genPkn(int k, int n);

/// The element of an ordered monomial.  The displayed factor order is
/// non-decreasing slope; the realization multiplies the highest slope first,
/// the orientation in which distinct ordered P-monomials are orthogonal
/// (dual data propagates through the product).
ShufElem monoElem(const SlopeMonomial& m);

/// Nested-contour pairing <R, R'>; dual data of R' is solved on demand.
FElem pairOrdered(const ShufElem& r, const ShufElem& rp);

/// Equal-contour p-regularized pairing; must agree with pairOrdered.
FElem pairEqualContour(const ShufElem& r, const ShufElem& rp);

/// Decompose R over the ordered E-basis via P-basis orthogonality:
/// gamma = <R, M_P> / <M_P, M_P>, then an exact P -> E change of basis,
/// with the reconstruction sum(gamma * monomial) == R asserted.  The slope
/// window for candidate monomials grows from the component's average slope
/// until reconstruction succeeds.
std::vector<std::pair<SlopeMonomial, FElem>> decomposeOrdered(const ShufElem& r);
/// Same with an explicit slope sandwich [lo, hi] for the candidates.
std::vector<std::pair<SlopeMonomial, FElem>> decomposeOrdered(const ShufElem& r,
                                                              const GenIndex& lo,
                                                              const GenIndex& hi);

/// Straightening data of a commutator of staircase generators.
struct StructureEntry {
    SlopeMonomial mono;
    FElem coeff;    // full coefficient, a multiple of Delta
    bool inK;       // coeff / Delta certified in K
};
struct StructureTable {
    GenIndex left, right;  // [E_left, E_right] with slope(left) >= slope(right)
    std::vector<StructureEntry> entries;
    bool verified = false;
};

/// [E_{k,n}, E_{k',n'}] for n/k >= n'/k', decomposed over ordered E-monomials
/// with all slopes inside [n'/k', n/k]; every coefficient is divided by
/// Delta and certified in K.  Engine bracket order is [lower, higher], so
/// the table reports the straightening of that commutator.
StructureTable structureConstants(int k, int n, int kp, int np);

}  // namespace shufkit
