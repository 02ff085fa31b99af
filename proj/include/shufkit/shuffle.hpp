/**
 * @file shuffle.hpp
 * @brief The shuffle algebra: zeta-kernel products, generator families
 *        E/P/H/Q/T, staircase reduction, and Newton-type conversions along
 *        fixed slopes.
 *
 * Elements are stored as canonical fractions num / D_k per arity-degree
 * component.  Components may additionally carry "dual data": a Laurent
 * polynomial rho with R = Sym[rho * prod_{i<j} zeta(z_i/z_j)], the
 * presentation in which the nested-contour pairing is a plain constant
 * term.  Dual data propagates through sums and products; arity-1
 * generators are born with it.
 */
#pragma once

#include "shufkit/symrat.hpp"

namespace shufkit {

/// zeta(x) = (1-x q1)(1-x q2) / ((1-x)(1-x q)) evaluated at a point of F.
FElem zetaAt(const FElem& x);

/// Coefficients of the expansion of 1/zeta(y/x) in powers of y/x:
/// 1 - Delta * sum_{s>=1} (q1^s - q2^s)/(q1 - q2) (y/x)^s.
TruncSeries zetaInvSeries(int order);

/// Generator index: arity k >= 1, integer degree n.
struct GenIndex {
    int k, n;
    friend auto operator<=>(const GenIndex&, const GenIndex&) = default;
};

/// Element of the shuffle algebra: finite sum of homogeneous components
/// indexed by (arity, degree).
class ShufElem {
  public:
    struct Comp {
        ShufForm form;
        std::optional<MultiLaurent> dual;  // rho with R = Sym[rho * prod zeta]
    };
    using Key = std::pair<int, int>;  // (arity, degree)

    ShufElem() = default;
    static ShufElem scalar(FElem c);
    /// Single component; dual data optional.
    static ShufElem fromForm(int degree, ShufForm f, std::optional<MultiLaurent> dual = {});

    bool isZero() const { return comps_.empty(); }
    const std::map<Key, Comp>& comps() const { return comps_; }
    /// The unique component when the element is homogeneous; throws otherwise.
    const Comp& sole() const;

    friend bool operator==(const ShufElem& a, const ShufElem& b);

    ShufElem operator+(const ShufElem& o) const;
    ShufElem operator-(const ShufElem& o) const;
    ShufElem operator-() const;
    ShufElem operator*(const FElem& s) const;
    /// Shuffle product.
    ShufElem operator*(const ShufElem& o) const;
    ShufElem& operator+=(const ShufElem& o) { return *this = *this + o; }
    ShufElem& operator-=(const ShufElem& o) { return *this = *this - o; }

  private:
    std::map<Key, Comp> comps_;
    void insert(int k, int n, ShufForm f, std::optional<MultiLaurent> dual);
};

/// Sym[rho * prod_{i<j} zeta(z_i/z_j)] as a canonical ShufForm.
ShufForm symZeta(const MultiLaurent& rho);

/// Sym[g / prod_{i<k} (1 - beta z_{i+1}/z_i) * prod_{i<j} zeta(z_i/z_j)];
/// asserts that all interior denominators cancel into D_k form.
ShufForm symKernel(const MultiLaurent& g, const FElem& beta);

/// E_{d•} = Sym[z^{d•} / prod (1 - q z_{i+1}/z_i) * prod zeta].
ShufElem genE(const std::vector<int>& d);

/// Staircase exponents d_i = ceil(ni/k) - ceil(n(i-1)/k) + delta_i^k - delta_i^1.
std::vector<int> staircaseD(int k, int n);

/// E_{k,n} = (-q)^{gcd(k,n)-1} * genE(staircase).
ShufElem genEkn(int k, int n);

/// T_{n,k} = (-1)^{k-1} E_{(0,..,0,k)} of arity n; T_{0,0} = 1, T_{0,k>=1} = 0.
ShufElem genT(int n, int k);

/// Commutator R R' - R' R.
ShufElem commutator(const ShufElem& a, const ShufElem& b);

enum class NewtonFamily { P, H, Q };

/// P/H/Q_{k0 s, n0 s} for s = 1..sMax along the primitive slope (k0, n0),
/// expressed through shuffle products of the staircase E's (Newton
/// recurrences of the E/H/Q exponential identities).  Index 0 of the result
/// is s = 1.
std::vector<ShufElem> newtonConvert(NewtonFamily fam, int k0, int n0, int sMax);

/// Inverse direction: E_{k0 s, n0 s} as polynomials in given P_{k0 j, n0 j}.
std::vector<ShufElem> newtonEFromP(const std::vector<ShufElem>& p);

/// Explicit symmetrized P-forms: variant 1 has interior (1 - q z_{i+1}/z_i)
/// with t-weights q^t; variant 2 has interior (1 - z_{i+1}/(q2 z_i)),
/// t-weights q2^{-t}, and the prefactor
/// c = (1-q2)^s (1-q^{-1})^k / ((1-q2)^k (1-q^{-s})), s = gcd(k,n).
ShufElem genPExplicit(int variant, int k, int n);

/// z^{d•} - q^a z^{staircase} = sum_i (1 - q z_{i+1}/z_i) * g_i; the result
/// is the exponent a and the witness list (i, g_i), verified by re-expansion.
struct StaircaseCert {
    int a = 0;
    std::vector<std::pair<int, MultiLaurent>> parts;
};
StaircaseCert staircaseReduce(const std::vector<int>& d);

}  // namespace shufkit
