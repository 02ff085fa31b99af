/**
 * @file symrat.hpp
 * @brief Multivariate Laurent polynomials and rational functions in
 *        z_1..z_k over F: symmetrization, canonical shuffle fractions with
 *        denominator D_k = prod_{i<j} (z_i q - z_j)(z_j q - z_i), and
 *        region-ordered constant-term extraction.
 *
 * All contour integrals in the calculus reduce to constant terms of Laurent
 * expansions in a region where the variable magnitudes are strictly
 * separated.  The engine here represents an integrand as
 *     num * prod_f (1 - c_f z^{v_f})^{-m_f}
 * where every z^{v_f} is "small" in the declared region, so each factor has
 * a single well-defined geometric expansion and constant terms are finite
 * exact sums.
 */
#pragma once

#include "shufkit/coeff.hpp"

#include <functional>
#include <map>
#include <span>

namespace shufkit {

/// Sparse Laurent polynomial in k variables over F.  Terms are kept sorted
/// by exponent vector (lex) with no zero coefficients.
class MultiLaurent {
  public:
    using Exp = std::vector<int>;
    using Term = std::pair<Exp, FElem>;

    explicit MultiLaurent(int arity = 0) : k_(arity) {}
    static MultiLaurent one(int arity);
    static MultiLaurent mono(int arity, Exp e, FElem c);
    /// The variable z_i (0-based).
    static MultiLaurent var(int arity, int i, int power = 1, FElem c = FElem(1));

    int arity() const { return k_; }
    bool isZero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    friend bool operator==(const MultiLaurent&, const MultiLaurent&) = default;

    MultiLaurent operator-() const;
    MultiLaurent operator+(const MultiLaurent& o) const;
    MultiLaurent operator-(const MultiLaurent& o) const;
    MultiLaurent operator*(const MultiLaurent& o) const;
    MultiLaurent operator*(const FElem& s) const;
    MultiLaurent& operator+=(const MultiLaurent& o) { return *this = *this + o; }
    MultiLaurent& operator-=(const MultiLaurent& o) { return *this = *this - o; }
    MultiLaurent& operator*=(const MultiLaurent& o) { return *this = *this * o; }

    /// Multiply by the monomial z^e.
    MultiLaurent shifted(const Exp& e) const;
    /// Apply z_i -> z_{perm[i]}.
    MultiLaurent applyPerm(std::span<const int> perm) const;
    /// Reinterpret in a larger arity, variable i -> i + offset.
    MultiLaurent embed(int newArity, int offset) const;
    /// Substitute z_i -> c * z^m (m must have m[i] == 0).
    MultiLaurent substVar(int i, const FElem& c, const Exp& m) const;
    /// Substitute z_i -> value for all variables.
    FElem evalAll(std::span<const FElem> vals) const;
    /// z_i -> 1/z_i for all i.
    MultiLaurent invertVars() const;

    /// Inclusive exponent range of variable i; (0,0) when absent or zero.
    std::pair<int, int> expRange(int i) const;
    /// Group terms by the exponent of variable i (exponent of i zeroed out).
    std::map<int, MultiLaurent> byVar(int i) const;
    /// Total-degree homogeneous components.
    std::map<int, MultiLaurent> homogeneous() const;
    int totalDegreeOfTerm(std::size_t t) const;

    /// Keep only the terms whose exponent vector satisfies pred.
    MultiLaurent filtered(const std::function<bool(const Exp&)>& pred) const;

    bool isSymmetric() const;
    /// Exact division over F; nullopt when not exact.
    std::optional<MultiLaurent> divExact(const MultiLaurent& d) const;

    std::string toString(const std::function<std::string(int)>& varName = nullptr) const;

  private:
    int k_;
    std::vector<Term> terms_;
    void sortMerge();
};

/// Plain sum over all arity! permutations (no 1/k!).
MultiLaurent symmetrize(const MultiLaurent& f);

/// Canonical fraction num / D_k with D_k = prod_{i<j}(z_i q - z_j)(z_j q - z_i).
class ShufForm {
  public:
    explicit ShufForm(int arity = 0) : k_(arity), num_(arity) {}
    ShufForm(int arity, MultiLaurent num) : k_(arity), num_(std::move(num)) {}

    static MultiLaurent Dk(int arity);

    int arity() const { return k_; }
    const MultiLaurent& num() const { return num_; }
    bool isZero() const { return num_.isZero(); }

    friend bool operator==(const ShufForm&, const ShufForm&) = default;

    ShufForm operator+(const ShufForm& o) const;
    ShufForm operator-(const ShufForm& o) const;
    ShufForm operator*(const FElem& s) const { return {k_, num_ * s}; }
    ShufForm operator-() const { return {k_, -num_}; }

    /// num must be symmetric for a valid shuffle element.
    bool numIsSymmetric() const { return num_.isSymmetric(); }

    /// phi: R -> R(1, q1^{-1}, ..., q1^{-k+1}).
    FElem evalPhi() const;

  private:
    int k_;
    MultiLaurent num_;
};

/// Canonicalize the symmetric rational function num/den as a ShufForm:
/// clears den against D_k by exact division (num * D_k / den).  Throws
/// NotInAlgebra when the division is inexact or the result is asymmetric.
ShufForm shufCanonical(const MultiLaurent& num, const MultiLaurent& den);
inline ShufForm shufCanonical(const MultiLaurent& num) {
    return shufCanonical(num, MultiLaurent::one(num.arity()));
}

struct NotInAlgebra : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonBinomialDenominator : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AmbiguousDirection : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleHit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Magnitude model for Laurent expansion regions.
///
/// Variables are identified by their MultiLaurent index.  `rank[i]` is the
/// magnitude class of variable i: SMALLER rank = LARGER magnitude, and any
/// two distinct ranks are hierarchically separated (|ratio| beats any
/// q-power).  Variables of equal rank are compared through their
/// q1/q2/p-monomial prefactor with the convention |q1| >> |q2| >> |1/p| > 1
/// (a generic instantiation of "|q1|,|q2| > 1 > |p|").  `pVar` marks which
/// variable index, if any, plays the role of the auxiliary small symbol p.
struct RegionOrder {
    std::vector<int> rank;
    int pVar = -1;

    static RegionOrder chain(int arity);  // |z_0| >> |z_1| >> ... >> |z_{k-1}|
    static RegionOrder equal(int arity, int pVar);  // all z equal, plus p

    /// Sign of log|q1^a q2^b p^c| under the generic flags; 0 iff a=b=c=0.
    static int qpSign(int a, int b, int cp);
};

/// A rational function num / prod_f (1 - c_f z^{v_f})^{m_f} in which every
/// z^{v_f} is small in the region: the canonical expandable integrand.
class GeomFrac {
  public:
    struct Fac {
        FElem c;               // coefficient of the small monomial
        MultiLaurent::Exp v;   // exponent vector of the small monomial
        int mult = 1;
    };

    explicit GeomFrac(MultiLaurent num) : num_(std::move(num)) {}

    const MultiLaurent& num() const { return num_; }
    MultiLaurent& num() { return num_; }
    const std::vector<Fac>& dens() const { return dens_; }

    /// Divide by the binomial (c1 z^u - c2 z^w) with multiplicity mult,
    /// resolving the expansion direction from ord.  The dominant monomial is
    /// absorbed into the numerator as an exact inverse-monomial shift.
    /// Throws AmbiguousDirection when ord cannot separate the two monomials.
    void divideBinomial(const RegionOrder& ord, FElem c1, MultiLaurent::Exp u, FElem c2,
                        MultiLaurent::Exp w, int mult = 1);
    /// Multiply numerator by a Laurent polynomial.
    void mulNum(const MultiLaurent& p) { num_ *= p; }

    /// Extract the victim-variable constant term: expands every factor that
    /// involves the victim (all such small monomials carry a negative victim
    /// exponent once the victim is the largest remaining variable) and keeps
    /// the victim^0 coefficient.  The victim must not appear in any remaining
    /// factor afterwards.
    void constantTerm(const RegionOrder& ord, int victim);

    /// Constant term in all variables of `order` (largest magnitude first).
    FElem fullConstantTerm(const RegionOrder& ord, std::span<const int> victims);

  private:
    MultiLaurent num_;
    std::vector<Fac> dens_;
};

/// Direction test used by GeomFrac: returns true when z^v is small under ord
/// with coefficient monomial q1^a q2^b (and v[pVar] counting as the p power).
bool isSmallMonomial(const RegionOrder& ord, const MultiLaurent::Exp& v, int qa, int qb);

}  // namespace shufkit
