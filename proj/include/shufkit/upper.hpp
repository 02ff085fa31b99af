/**
 * @file upper.hpp
 * @brief Lattice-path combinatorics of the upper-half algebra: clockwise
 *        order, path area, convex-path enumeration, truncated W-generators
 *        with the alpha weight, the theta and f_{kk'} series, and the
 *        diagonal Hecke commutation rule.
 *
 * Plane points follow the (n, k) index order of the W-algebra picture:
 * n is the horizontal (degree) axis, k the vertical one, so E_{n,k} has
 * slope n/k.  The GenIndex of the pairing module keeps its (k, n) order.
 */
#pragma once

#include "shufkit/pairing.hpp"

namespace shufkit {

/// Nonzero lattice point (n, k); n horizontal (degree), k vertical.
struct PlanePoint {
    int n, k;
    friend auto operator<=>(const PlanePoint&, const PlanePoint&) = default;
};

/// Clockwise preorder on lattice points with the cut at the negative
/// vertical axis: within the closed upper half-plane it is slope order with
/// (n<0, 0) at -infinity and (n>0, 0) at +infinity; lower half-plane points
/// come after, ordered by their negatives.
bool clockLeq(const PlanePoint& v, const PlanePoint& w);

/// A path is the ordered list of its segment vectors, starting at the origin.
using LatticePath = std::vector<PlanePoint>;

/// Area of the polygon between P and its convexification (segments rearranged
/// in clockwise order), by the shoelace formula; a natural number.
long pathArea(const LatticePath& p);

/// All convex upper-half paths of size (n, k) with every slope in
/// [-mu, mu], as non-decreasing-slope E-monomials; empty for k = 0.
/// The window bound mu is the fraction mu.n / mu.k.
std::vector<SlopeMonomial> enumerateConvexPaths(int n, int k, const GenIndex& mu);

/// A window truncation of an element of the slope completion: the terms of
/// bidegree (n, k) whose monomials have all slopes in [-mu, mu].
struct WindowElement {
    GenIndex mu{1, 0};
    int n = 0, k = 0;
    std::map<SlopeMonomial, FElem> terms;

    friend bool operator==(const WindowElement&, const WindowElement&) = default;
};

/// W_{n,k} truncated to the window [-mu, mu]: the sum over strictly-
/// increasing-slope convex paths v of q^{alpha(v)} times the E-monomial,
/// with alpha(v) = sum_{i<j} k_i n_j
///              + sum_i (k_i n_i + k_i - n_i - gcd(n_i, k_i)) / 2.
/// W_{n,0} = delta_{n,0} times the empty monomial.
WindowElement wTruncated(int n, int k, const GenIndex& mu);

/// theta(s) = Delta/(1-q) * zeta(q) ... zeta(q^{s-1}), s >= 1.
FElem thetaFn(int s);

/// log f_{kk'} to the given order: the n-th coefficient is
/// (1-q1^n)(1-q2^n)(q^{max(0,k-k')n} - q^{kn}) / (n (1-q^n)).
TruncSeries fSeriesLog(int k, int kp, int order);

/// f_{kk'}(z) = exp(fSeriesLog); constant term 1, higher coefficients in
/// Delta * K.
TruncSeries fSeries(int k, int kp, int order);

/// [P_{0,k}, R] = +/- (1-q1^k)(1-q2^k)(z_1^k + ... + z_m^k) R componentwise;
/// Right is the + sign (R in S^op), Left the - sign (R in S).  Dual data is
/// not propagated.
enum class HeckeSide { Left, Right };
ShufElem heckeCommute(int k, const ShufElem& r, HeckeSide side);

}  // namespace shufkit
