/**
 * @file coeff.hpp
 * @brief Exact arithmetic in the ground ring K = Z[q1^{±1}, q2^{±1}] and its
 *        fraction field F.
 *
 * LaurentQ2 is a sparse Laurent polynomial in two symbols q1, q2 over
 * arbitrary-precision integers.  FElem is a reduced fraction of two
 * LaurentQ2 values with a deterministic canonical form (gcd removed, the
 * denominator monomial-shifted to a true polynomial with its graded-lex
 * leading coefficient positive).  TruncSeries is a truncated power series
 * over F used for exp/log conversions of generating functions.
 *
 * Conventions baked in here and relied on everywhere above:
 *   - q is never a free symbol: q := q1*q2 expands immediately.
 *   - the central charge c is never a free symbol: callers pass the exponent
 *     r and use qpow(r*n) etc.
 *   - no floating point anywhere.
 */
#pragma once

#include <gmpxx.h>

#include <cassert>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace shufkit {

using Int = mpz_class;

/// Exponent pair of a q1^a q2^b monomial.
struct QExp {
    int a = 0;
    int b = 0;
    friend auto operator<=>(const QExp&, const QExp&) = default;
};

/// Sparse Laurent polynomial in q1, q2 with integer coefficients.
/// Terms are kept sorted by (a,b) lex ascending with no zero coefficients,
/// so equal values have identical representations.
class LaurentQ2 {
  public:
    using Term = std::pair<QExp, Int>;

    LaurentQ2() = default;
    explicit LaurentQ2(long c) { if (c != 0) terms_.push_back({{0, 0}, Int(c)}); }
    explicit LaurentQ2(const Int& c) { if (c != 0) terms_.push_back({{0, 0}, c}); }

    static LaurentQ2 zero() { return LaurentQ2(); }
    static LaurentQ2 one() { return LaurentQ2(1); }
    static LaurentQ2 mono(int a, int b, Int c = 1);
    /// Build from terms already sorted by (a, b) with no zeros or duplicates.
    static LaurentQ2 fromSorted(std::vector<std::pair<QExp, Int>> terms);
    static LaurentQ2 q1(int e = 1) { return mono(e, 0); }
    static LaurentQ2 q2(int e = 1) { return mono(0, e); }
    /// q = q1*q2, expanded on the spot.
    static LaurentQ2 qpow(int e = 1) { return mono(e, e); }
    /// Delta = (1-q1)(1-q2).
    static LaurentQ2 delta();

    bool isZero() const { return terms_.empty(); }
    bool isOne() const;
    bool isMonomial() const { return terms_.size() == 1; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    friend bool operator==(const LaurentQ2&, const LaurentQ2&) = default;

    LaurentQ2 operator-() const;
    LaurentQ2 operator+(const LaurentQ2& o) const;
    LaurentQ2 operator-(const LaurentQ2& o) const;
    LaurentQ2 operator*(const LaurentQ2& o) const;
    LaurentQ2& operator+=(const LaurentQ2& o) { return *this = *this + o; }
    LaurentQ2& operator-=(const LaurentQ2& o) { return *this = *this - o; }
    LaurentQ2& operator*=(const LaurentQ2& o) { return *this = *this * o; }
    LaurentQ2 pow(unsigned e) const;

    /// Multiply by the monomial q1^a q2^b.
    LaurentQ2 shifted(int a, int b) const;

    /// Swap q1 <-> q2.
    LaurentQ2 swapQ() const;
    bool isSymmetric() const { return *this == swapQ(); }

    /// Componentwise minimum exponents (only valid when nonzero).
    QExp minExp() const;
    /// Term with the largest (a+b, a) key — the graded-lex leading term.
    const Term& leadGradedLex() const;
    /// Positive gcd of all integer coefficients (0 for the zero polynomial).
    Int content() const;

    /// Exact division; nullopt when o does not divide *this.
    std::optional<LaurentQ2> divExact(const LaurentQ2& o) const;
    /// Gcd, normalized to positive graded-lex leading coefficient and
    /// monomial-free (min exponents 0).  gcd(0,0) = 0.
    static LaurentQ2 gcd(const LaurentQ2& x, const LaurentQ2& y);

    /// Substitute integer values — only used by tests as a cheap witness.
    Int evalAt(long q1v, long q2v) const;

    std::string toString() const;

  private:
    std::vector<Term> terms_;
    void normalizeSorted();  // sorts and merges; drops zeros
    friend class FElem;
};

/// Element of the fraction field F of K, kept in canonical reduced form.
class FElem {
  public:
    FElem() : num_(), den_(LaurentQ2::one()) {}
    FElem(long c) : num_(c), den_(LaurentQ2::one()) {}
    FElem(const LaurentQ2& n) : num_(n), den_(LaurentQ2::one()) {}
    FElem(LaurentQ2 n, LaurentQ2 d);

    static FElem q1(int e = 1);
    static FElem q2(int e = 1);
    /// q^e with e of either sign (q = q1 q2).
    static FElem qpow(int e);
    static FElem delta() { return FElem(LaurentQ2::delta()); }
    /// Exact rational a/b.
    static FElem ratio(long a, long b);

    const LaurentQ2& num() const { return num_; }
    const LaurentQ2& den() const { return den_; }
    bool isZero() const { return num_.isZero(); }
    bool isOne() const { return num_.isOne() && den_.isOne(); }

    friend bool operator==(const FElem&, const FElem&) = default;

    FElem operator-() const;
    FElem operator+(const FElem& o) const;
    FElem operator-(const FElem& o) const;
    FElem operator*(const FElem& o) const;
    FElem operator/(const FElem& o) const;
    FElem& operator+=(const FElem& o) { return *this = *this + o; }
    FElem& operator-=(const FElem& o) { return *this = *this - o; }
    FElem& operator*=(const FElem& o) { return *this = *this * o; }
    FElem& operator/=(const FElem& o) { return *this = *this / o; }
    FElem inverse() const;
    FElem pow(int e) const;
    FElem swapQ() const { return FElem(num_.swapQ(), den_.swapQ()); }

    /// Laurent-polynomial witness when the denominator is a unit monomial.
    std::optional<LaurentQ2> asLaurent() const;

    std::string toString() const;

  private:
    LaurentQ2 num_, den_;
    void normalize();
};

/// isInK: true iff x is a Laurent polynomial symmetric under q1 <-> q2;
/// the witness is that polynomial.
std::optional<LaurentQ2> isInK(const FElem& x);

/// x / Delta.  When certify is set, throws NotDivisible unless the quotient
/// passes isInK.
struct NotDivisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
FElem deltaFactor(const FElem& x, bool certify = false);

/// Truncated power series sum_{i=0..M} c_i t^i over F.
class TruncSeries {
  public:
    TruncSeries(std::string tag, int order)
        : tag_(std::move(tag)), c_(static_cast<std::size_t>(order) + 1) {
        if (order < 0) throw std::invalid_argument("TruncSeries: negative order");
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::string& tag() const { return tag_; }
    const FElem& operator[](int i) const { return c_.at(static_cast<std::size_t>(i)); }
    FElem& operator[](int i) { return c_.at(static_cast<std::size_t>(i)); }

    TruncSeries operator+(const TruncSeries& o) const;
    TruncSeries operator-(const TruncSeries& o) const;
    TruncSeries operator*(const TruncSeries& o) const;
    TruncSeries scaled(const FElem& s) const;

    friend bool operator==(const TruncSeries&, const TruncSeries&) = default;

  private:
    std::string tag_;
    std::vector<FElem> c_;
};

/// exp of a series with zero constant term, to the same order.
TruncSeries qSeriesExp(const TruncSeries& logTerms);
/// log of a series with constant term 1, to the same order.
TruncSeries qSeriesLog(const TruncSeries& s);

}  // namespace shufkit
