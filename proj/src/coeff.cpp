/**
 * @file coeff.cpp
 * @brief LaurentQ2 / FElem / TruncSeries implementation.
 *
 * The only nontrivial algorithm is the bivariate gcd: strip integer and
 * monomial content, then run a primitive pseudo-remainder sequence viewing
 * Z[q1,q2] as (Z[q2])[q1].  Sizes at desk scale are tiny, so the primitive
 * PRS is entirely adequate.
 */
#include "shufkit/coeff.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <sstream>

namespace shufkit {

// --------------------------------------------------------------- LaurentQ2

void LaurentQ2::normalizeSorted() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
            if (out.back().second == 0) out.pop_back();
        } else if (t.second != 0) {
            out.push_back(std::move(t));
        }
    }
    terms_ = std::move(out);
}

LaurentQ2 LaurentQ2::mono(int a, int b, Int c) {
    LaurentQ2 r;
    if (c != 0) r.terms_.push_back({{a, b}, std::move(c)});
    return r;
}

LaurentQ2 LaurentQ2::fromSorted(std::vector<std::pair<QExp, Int>> terms) {
    LaurentQ2 r;
    r.terms_ = std::move(terms);
    return r;
}

LaurentQ2 LaurentQ2::delta() {
    // (1-q1)(1-q2) = 1 - q1 - q2 + q1 q2
    LaurentQ2 r;
    r.terms_ = {{{0, 0}, 1}, {{0, 1}, -1}, {{1, 0}, -1}, {{1, 1}, 1}};
    return r;
}

bool LaurentQ2::isOne() const {
    return terms_.size() == 1 && terms_[0].first == QExp{0, 0} && terms_[0].second == 1;
}

LaurentQ2 LaurentQ2::operator-() const {
    LaurentQ2 r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
}

LaurentQ2 LaurentQ2::operator+(const LaurentQ2& o) const {
    LaurentQ2 r;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Int c = terms_[i].second + o.terms_[j].second;
            if (c != 0) r.terms_.push_back({terms_[i].first, std::move(c)});
            ++i, ++j;
        }
    }
    return r;
}

LaurentQ2 LaurentQ2::operator-(const LaurentQ2& o) const { return *this + (-o); }

LaurentQ2 LaurentQ2::operator*(const LaurentQ2& o) const {
    if (isZero() || o.isZero()) return {};
    // monomial factors shift exponents and scale, preserving term order
    if (terms_.size() == 1 || o.terms_.size() == 1) {
        const LaurentQ2& m = terms_.size() == 1 ? *this : o;
        const LaurentQ2& p = terms_.size() == 1 ? o : *this;
        const QExp& e = m.terms_[0].first;
        const Int& c = m.terms_[0].second;
        LaurentQ2 r;
        r.terms_.reserve(p.terms_.size());
        for (const auto& t : p.terms_)
            r.terms_.push_back({{t.first.a + e.a, t.first.b + e.b}, t.second * c});
        return r;
    }
    std::map<QExp, Int> acc;
    for (const auto& s : terms_)
        for (const auto& t : o.terms_) {
            QExp e{s.first.a + t.first.a, s.first.b + t.first.b};
            acc[e] += s.second * t.second;
        }
    LaurentQ2 r;
    for (auto& [e, c] : acc)
        if (c != 0) r.terms_.push_back({e, std::move(c)});
    return r;
}

LaurentQ2 LaurentQ2::pow(unsigned e) const {
    LaurentQ2 r = one(), b = *this;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

LaurentQ2 LaurentQ2::shifted(int a, int b) const {
    LaurentQ2 r = *this;
    for (auto& t : r.terms_) t.first.a += a, t.first.b += b;
    return r;
}

LaurentQ2 LaurentQ2::swapQ() const {
    LaurentQ2 r = *this;
    for (auto& t : r.terms_) std::swap(t.first.a, t.first.b);
    r.normalizeSorted();
    return r;
}

QExp LaurentQ2::minExp() const {
    assert(!terms_.empty());
    QExp m = terms_[0].first;
    for (const auto& t : terms_) {
        m.a = std::min(m.a, t.first.a);
        m.b = std::min(m.b, t.first.b);
    }
    return m;
}

const LaurentQ2::Term& LaurentQ2::leadGradedLex() const {
    assert(!terms_.empty());
    const Term* best = &terms_[0];
    for (const auto& t : terms_) {
        auto key = [](const QExp& e) { return std::pair<int, int>(e.a + e.b, e.a); };
        if (key(t.first) > key(best->first)) best = &t;
    }
    return *best;
}

Int LaurentQ2::content() const {
    Int g = 0;
    for (const auto& t : terms_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_mpz_t());
    return g;
}

Int LaurentQ2::evalAt(long q1v, long q2v) const {
    auto ipow = [](long b, int e) {
        Int r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    };
    Int r = 0;
    for (const auto& t : terms_) {
        if (t.first.a < 0 || t.first.b < 0)
            throw std::invalid_argument("evalAt: negative exponent");
        r += t.second * ipow(q1v, t.first.a) * ipow(q2v, t.first.b);
    }
    return r;
}

std::string LaurentQ2::toString() const {
    if (isZero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Int c = t.second;
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        Int ac = abs(c);
        bool hasvar = t.first.a != 0 || t.first.b != 0;
        if (ac != 1 || !hasvar) os << ac.get_str();
        if (ac != 1 && hasvar) os << "*";
        if (t.first.a != 0) os << "q1^" << t.first.a;
        if (t.first.a != 0 && t.first.b != 0) os << "*";
        if (t.first.b != 0) os << "q2^" << t.first.b;
    }
    return os.str();
}

// ------------------------------------------------------- division and gcd

namespace {

// Dense univariate polynomial over C; C is Int or UP<Int>.
template <class C>
struct UP;

inline bool isZeroC(const Int& x) { return x == 0; }
template <class C>
bool isZeroC(const UP<C>& x);

template <class C>
struct UP {
    std::vector<C> c;  // c[i] = coefficient of x^i
    void trim() {
        while (!c.empty() && isZeroC(c.back())) c.pop_back();
    }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool zero() const { return c.empty(); }
};

template <class C>
bool isZeroC(const UP<C>& x) { return x.zero(); }

inline Int addC(const Int& a, const Int& b) { return a + b; }
inline Int mulC(const Int& a, const Int& b) { return a * b; }
inline Int negC(const Int& a) { return -a; }
template <class C> UP<C> addC(const UP<C>& a, const UP<C>& b);
template <class C> UP<C> mulC(const UP<C>& a, const UP<C>& b);
template <class C> UP<C> negC(const UP<C>& a);

template <class C>
UP<C> upMul(const UP<C>& a, const UP<C>& b) {
    UP<C> r;
    if (a.zero() || b.zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, C{});
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = addC(r.c[i + j], mulC(a.c[i], b.c[j]));
    r.trim();
    return r;
}

template <class C>
UP<C> addC(const UP<C>& a, const UP<C>& b) {
    UP<C> r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        if (i < a.c.size()) r.c[i] = addC(r.c[i], a.c[i]);
        if (i < b.c.size()) r.c[i] = addC(r.c[i], b.c[i]);
    }
    r.trim();
    return r;
}
template <class C>
UP<C> negC(const UP<C>& a) {
    UP<C> r = a;
    for (auto& x : r.c) x = negC(x);
    return r;
}
template <class C>
UP<C> subC(const UP<C>& a, const UP<C>& b) { return addC(a, negC(b)); }
template <class C>
UP<C> mulC(const UP<C>& a, const UP<C>& b) { return upMul(a, b); }

// gcd dispatch
inline Int gcdC(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}
template <class C>
UP<C> upGcd(UP<C> a, UP<C> b);
template <class C>
UP<C> gcdC(const UP<C>& a, const UP<C>& b) { return upGcd(a, b); }

template <class C>
C contentOf(const UP<C>& p) {
    C g{};
    for (const auto& x : p.c) g = gcdC(g, x);
    return g;
}

// exact division of every coefficient by d (assumed to divide)
inline Int divCexact(const Int& a, const Int& d) {
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
    return q;
}
template <class C>
std::optional<UP<C>> upDivExact(const UP<C>& p, const UP<C>& d);

// exact division of two univariate polys (assumed exact — content division)
UP<Int> divCexact(const UP<Int>& a, const UP<Int>& d);

template <class C>
UP<C> divCexact(const UP<C>& a, const C& d) {
    UP<C> r = a;
    for (auto& x : r.c) x = divCexact(x, d);
    return r;
}

UP<Int> divCexact(const UP<Int>& a, const UP<Int>& d) {
    auto q = upDivExact(a, d);
    assert(q);
    return *q;
}

inline std::optional<Int> divCexactChecked(const Int& a, const Int& d) {
    if (d == 0) return std::nullopt;
    if (!mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
    return divCexact(a, d);
}
template <class C>
std::optional<UP<C>> divCexactChecked(const UP<C>& a, const UP<C>& d) {
    return upDivExact(a, d);
}

// Exact univariate division p / d over the coefficient ring; nullopt if not exact.
template <class C>
std::optional<UP<C>> upDivExact(const UP<C>& p, const UP<C>& d) {
    if (d.zero()) return std::nullopt;
    UP<C> r = p, q;
    if (p.zero()) return q;
    if (r.deg() < d.deg()) return std::nullopt;
    q.c.assign(static_cast<std::size_t>(r.deg() - d.deg()) + 1, C{});
    while (!r.zero() && r.deg() >= d.deg()) {
        auto lc = divCexactChecked(r.c.back(), d.c.back());
        if (!lc) return std::nullopt;
        int sh = r.deg() - d.deg();
        q.c[static_cast<std::size_t>(sh)] = *lc;
        UP<C> t;
        t.c.assign(static_cast<std::size_t>(sh) + 1, C{});
        t.c.back() = *lc;
        r = subC(r, upMul(t, d));
        if (!r.zero() && r.deg() >= sh + d.deg()) return std::nullopt;  // no progress
    }
    if (!r.zero()) return std::nullopt;
    q.trim();
    return q;
}

// primitive PRS gcd (content stripped every round; leading coefficients
// reduced by their gcd at every elimination step to limit growth)
template <class C>
UP<C> upGcd(UP<C> a, UP<C> b) {
    if (a.zero()) return b;
    if (b.zero()) return a;
    C ca = contentOf(a), cb = contentOf(b);
    a = divCexact(a, ca);
    b = divCexact(b, cb);
    C cg = gcdC(ca, cb);
    if (a.deg() < b.deg()) std::swap(a, b);
    while (!b.zero()) {
        C lb = b.c.back();
        UP<C> r = a;
        while (!r.zero() && r.deg() >= b.deg()) {
            C lr = r.c.back();
            int sh = r.deg() - b.deg();
            UP<C> t;
            t.c.assign(static_cast<std::size_t>(sh) + 1, C{});
            t.c.back() = lr;
            UP<C> rb = r;
            for (auto& x : rb.c) x = mulC(x, lb);
            r = subC(rb, upMul(t, b));
        }
        a = b;
        if (!r.zero()) r = divCexact(r, contentOf(r));
        b = r;
    }
    a = divCexact(a, contentOf(a));
    for (auto& x : a.c) x = mulC(x, cg);
    return a;
}

// conversions LaurentQ2 (shifted to polynomial, min exps 0) <-> UP<UP<Int>>
UP<UP<Int>> toNested(const LaurentQ2& p) {
    UP<UP<Int>> r;
    int da = 0;
    for (const auto& t : p.terms()) da = std::max(da, t.first.a);
    r.c.resize(static_cast<std::size_t>(da) + 1);
    for (const auto& t : p.terms()) {
        assert(t.first.a >= 0 && t.first.b >= 0);
        auto& row = r.c[static_cast<std::size_t>(t.first.a)];
        if (row.c.size() <= static_cast<std::size_t>(t.first.b))
            row.c.resize(static_cast<std::size_t>(t.first.b) + 1, Int(0));
        row.c[static_cast<std::size_t>(t.first.b)] = t.second;
    }
    for (auto& row : r.c) row.trim();
    r.trim();
    return r;
}

LaurentQ2 fromNested(const UP<UP<Int>>& p) {
    // ascending (i, j) matches the sorted term order of LaurentQ2
    std::vector<std::pair<QExp, Int>> terms;
    for (std::size_t i = 0; i < p.c.size(); ++i)
        for (std::size_t j = 0; j < p.c[i].c.size(); ++j)
            if (p.c[i].c[j] != 0)
                terms.push_back({{static_cast<int>(i), static_cast<int>(j)}, p.c[i].c[j]});
    return LaurentQ2::fromSorted(std::move(terms));
}

}  // namespace

std::optional<LaurentQ2> LaurentQ2::divExact(const LaurentQ2& o) const {
    if (o.isZero()) return std::nullopt;
    if (isZero()) return LaurentQ2();
    // strip monomial parts: this = m1 * P, o = m2 * D with P, D true polynomials
    QExp m1 = minExp(), m2 = o.minExp();
    LaurentQ2 P = shifted(-m1.a, -m1.b), D = o.shifted(-m2.a, -m2.b);
    auto q = upDivExact(toNested(P), toNested(D));
    if (!q) return std::nullopt;
    return fromNested(*q).shifted(m1.a - m2.a, m1.b - m2.b);
}

LaurentQ2 LaurentQ2::gcd(const LaurentQ2& x, const LaurentQ2& y) {
    if (x.isZero() && y.isZero()) return LaurentQ2();
    auto strip = [](const LaurentQ2& p) {
        if (p.isZero()) return p;
        QExp m = p.minExp();
        return p.shifted(-m.a, -m.b);
    };
    LaurentQ2 g;
    if (x.isZero()) g = strip(y);
    else if (y.isZero()) g = strip(x);
    else g = fromNested(upGcd(toNested(strip(x)), toNested(strip(y))));
    // normalize: monomial-free, positive graded-lex leading coefficient
    QExp m = g.minExp();
    g = g.shifted(-m.a, -m.b);
    if (g.leadGradedLex().second < 0) g = -g;
    return g;
}

// ------------------------------------------------------------------- FElem

FElem::FElem(LaurentQ2 n, LaurentQ2 d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.isZero()) throw std::invalid_argument("FElem: zero denominator");
    normalize();
}

void FElem::normalize() {
    if (num_.isZero()) {
        den_ = LaurentQ2::one();
        return;
    }
    if (den_.isOne()) return;  // already canonical
    // pull monomial content out of both
    QExp mn = num_.minExp(), md = den_.minExp();
    LaurentQ2 N = num_.shifted(-mn.a, -mn.b), D = den_.shifted(-md.a, -md.b);
    if (D.isOne()) {  // monomial denominator: already canonical
        num_ = N.shifted(mn.a - md.a, mn.b - md.b);
        den_ = LaurentQ2::one();
        return;
    }
    if (!N.isOne() && !D.isOne()) {
        LaurentQ2 g = LaurentQ2::gcd(N, D);
        if (!g.isOne()) {
            N = *N.divExact(g);
            D = *D.divExact(g);
        }
    }
    // integer content: divide both by gcd of contents, sign from D's lead
    Int c = gcdC(N.content(), D.content());
    if (D.leadGradedLex().second < 0) c = -c;
    if (c != 1) {
        LaurentQ2 cc{c};
        N = *N.divExact(cc);
        D = *D.divExact(cc);
    }
    num_ = N.shifted(mn.a - md.a, mn.b - md.b);
    den_ = D;
}

FElem FElem::q1(int e) {
    return e >= 0 ? FElem(LaurentQ2::q1(e)) : FElem(LaurentQ2::one(), LaurentQ2::q1(-e));
}
FElem FElem::q2(int e) {
    return e >= 0 ? FElem(LaurentQ2::q2(e)) : FElem(LaurentQ2::one(), LaurentQ2::q2(-e));
}
FElem FElem::qpow(int e) {
    return e >= 0 ? FElem(LaurentQ2::qpow(e)) : FElem(LaurentQ2::one(), LaurentQ2::qpow(-e));
}
FElem FElem::ratio(long a, long b) { return FElem(LaurentQ2(a), LaurentQ2(b)); }

FElem FElem::operator-() const {
    FElem r = *this;
    r.num_ = -r.num_;
    return r;
}

FElem FElem::operator+(const FElem& o) const {
    if (den_ == o.den_) return FElem(num_ + o.num_, den_);
    return FElem(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
FElem FElem::operator-(const FElem& o) const {
    if (den_ == o.den_) return FElem(num_ - o.num_, den_);
    return FElem(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
FElem FElem::operator*(const FElem& o) const { return FElem(num_ * o.num_, den_ * o.den_); }
FElem FElem::operator/(const FElem& o) const {
    if (o.isZero()) throw std::invalid_argument("FElem: division by zero");
    return FElem(num_ * o.den_, den_ * o.num_);
}
FElem FElem::inverse() const { return FElem(1) / *this; }

FElem FElem::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    FElem r(1), b = *this;
    unsigned u = static_cast<unsigned>(e);
    while (u) {
        if (u & 1u) r *= b;
        b *= b;
        u >>= 1u;
    }
    return r;
}

std::optional<LaurentQ2> FElem::asLaurent() const {
    if (num_.isZero()) return LaurentQ2();
    if (!den_.isMonomial()) return std::nullopt;
    const auto& t = den_.terms()[0];
    if (t.second != 1 && t.second != -1) {
        // denominator with non-unit integer coefficient: not Laurent over Z
        auto d = num_.divExact(den_);
        return d;
    }
    LaurentQ2 r = num_.shifted(-t.first.a, -t.first.b);
    if (t.second == -1) r = -r;
    return r;
}

std::string FElem::toString() const {
    if (den_.isOne()) return num_.toString();
    return "(" + num_.toString() + ")/(" + den_.toString() + ")";
}

std::optional<LaurentQ2> isInK(const FElem& x) {
    auto w = x.asLaurent();
    if (!w) return std::nullopt;
    if (!w->isSymmetric()) return std::nullopt;
    return w;
}

FElem deltaFactor(const FElem& x, bool certify) {
    FElem r = x / FElem::delta();
    if (certify && !isInK(r))
        throw NotDivisible("deltaFactor: quotient not in K: " + r.toString());
    return r;
}

// ------------------------------------------------------------- TruncSeries

TruncSeries TruncSeries::operator+(const TruncSeries& o) const {
    TruncSeries r(tag_, std::min(order(), o.order()));
    for (int i = 0; i <= r.order(); ++i) r[i] = (*this)[i] + o[i];
    return r;
}
TruncSeries TruncSeries::operator-(const TruncSeries& o) const {
    TruncSeries r(tag_, std::min(order(), o.order()));
    for (int i = 0; i <= r.order(); ++i) r[i] = (*this)[i] - o[i];
    return r;
}
TruncSeries TruncSeries::operator*(const TruncSeries& o) const {
    TruncSeries r(tag_, std::min(order(), o.order()));
    for (int i = 0; i <= r.order(); ++i)
        for (int j = 0; i + j <= r.order() && j <= o.order(); ++j)
            if (i <= order()) r[i + j] += (*this)[i] * o[j];
    return r;
}
TruncSeries TruncSeries::scaled(const FElem& s) const {
    TruncSeries r = *this;
    for (int i = 0; i <= r.order(); ++i) r[i] *= s;
    return r;
}

TruncSeries qSeriesExp(const TruncSeries& f) {
    if (!f[0].isZero()) throw std::invalid_argument("qSeriesExp: nonzero constant term");
    int M = f.order();
    TruncSeries e(f.tag(), M);
    e[0] = FElem(1);
    // e_n = (1/n) * sum_{j=1..n} j * f_j * e_{n-j}
    for (int n = 1; n <= M; ++n) {
        FElem s(0);
        for (int j = 1; j <= n; ++j) s += FElem(j) * f[j] * e[n - j];
        e[n] = s / FElem(n);
    }
    return e;
}

TruncSeries qSeriesLog(const TruncSeries& s) {
    if (!s[0].isOne()) throw std::invalid_argument("qSeriesLog: constant term must be 1");
    int M = s.order();
    TruncSeries f(s.tag(), M);
    // n*s_n = sum_{j=1..n} j * f_j * s_{n-j}  =>  f_n = s_n - (1/n) sum_{j<n} j f_j s_{n-j}
    for (int n = 1; n <= M; ++n) {
        FElem t = FElem(n) * s[n];
        for (int j = 1; j < n; ++j) t -= FElem(j) * f[j] * s[n - j];
        f[n] = t / FElem(n);
    }
    return f;
}

}  // namespace shufkit
