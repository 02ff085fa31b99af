/**
 * @file symrat.cpp
 * @brief Multivariate Laurent arithmetic, canonical shuffle fractions, and
 *        the region-ordered constant-term engine.
 */
#include "shufkit/symrat.hpp"

#include <algorithm>
#include <cstdint>
#include <array>
#include <functional>
#include <numeric>
#include <sstream>

namespace shufkit {

namespace {

/// Graded-lex comparison on exponent vectors: total degree first, then lex.
bool gradedLexLess(const MultiLaurent::Exp& a, const MultiLaurent::Exp& b) {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiLaurent::Exp addExp(const MultiLaurent::Exp& a, const MultiLaurent::Exp& b) {
    MultiLaurent::Exp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

MultiLaurent::Exp subExp(const MultiLaurent::Exp& a, const MultiLaurent::Exp& b) {
    MultiLaurent::Exp r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

/// binom(n+m-1, m-1): coefficient of u^n in (1-u)^{-m}.
Int geomBinom(int n, int m) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n + m - 1),
                 static_cast<unsigned long>(m - 1));
    return r;
}

}  // namespace

void MultiLaurent::sortMerge() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().first == t.first) {
            out.back().second += t.second;
            if (out.back().second.isZero()) out.pop_back();
        } else if (!t.second.isZero()) {
            out.push_back(std::move(t));
        }
    }
    terms_ = std::move(out);
}

MultiLaurent MultiLaurent::one(int arity) { return mono(arity, Exp(arity, 0), FElem(1)); }

MultiLaurent MultiLaurent::mono(int arity, Exp e, FElem c) {
    MultiLaurent r(arity);
    if (static_cast<int>(e.size()) != arity)
        throw std::invalid_argument("MultiLaurent::mono: exponent arity mismatch");
    if (!c.isZero()) r.terms_.push_back({std::move(e), std::move(c)});
    return r;
}

MultiLaurent MultiLaurent::var(int arity, int i, int power, FElem c) {
    Exp e(arity, 0);
    e.at(static_cast<std::size_t>(i)) = power;
    return mono(arity, std::move(e), std::move(c));
}

MultiLaurent MultiLaurent::operator-() const {
    MultiLaurent r(k_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.first, -t.second});
    return r;
}

MultiLaurent MultiLaurent::operator+(const MultiLaurent& o) const {
    if (k_ != o.k_) throw std::invalid_argument("MultiLaurent: arity mismatch");
    MultiLaurent r(k_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
            r.terms_.push_back(terms_[i++]);
        } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            FElem c = terms_[i].second + o.terms_[j].second;
            if (!c.isZero()) r.terms_.push_back({terms_[i].first, std::move(c)});
            ++i, ++j;
        }
    }
    return r;
}

MultiLaurent MultiLaurent::operator-(const MultiLaurent& o) const { return *this + (-o); }

MultiLaurent MultiLaurent::operator*(const MultiLaurent& o) const {
    if (k_ != o.k_) throw std::invalid_argument("MultiLaurent: arity mismatch");
    // Fast path: pack exponent vectors into one 16-bit-per-variable key and
    // accumulate by sort-and-merge instead of a map keyed on vectors.
    if (k_ <= 4 && !terms_.empty() && !o.terms_.empty()) {
        bool fits = true;
        std::array<long, 4> lo{}, hi{};
        auto scan = [&](const std::vector<Term>& ts, bool first) {
            std::array<long, 4> l{}, h{};
            for (const auto& t : ts)
                for (int i = 0; i < k_; ++i) {
                    long e = t.first[static_cast<std::size_t>(i)];
                    auto ui = static_cast<std::size_t>(i);
                    if (&t == &ts.front()) l[ui] = h[ui] = e;
                    l[ui] = std::min(l[ui], e);
                    h[ui] = std::max(h[ui], e);
                }
            for (int i = 0; i < k_; ++i) {
                auto ui = static_cast<std::size_t>(i);
                if (first) lo[ui] = l[ui], hi[ui] = h[ui];
                else lo[ui] += l[ui], hi[ui] += h[ui];
            }
        };
        scan(terms_, true);
        scan(o.terms_, false);
        for (int i = 0; i < k_ && fits; ++i)
            fits = hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)] < 65536;
        if (fits) {
            auto pack = [&](const Exp& a, const Exp& b) {
                std::uint64_t key = 0;
                for (int i = 0; i < k_; ++i) {
                    auto ui = static_cast<std::size_t>(i);
                    key = (key << 16) |
                          static_cast<std::uint64_t>(static_cast<long>(a[ui]) + b[ui] - lo[ui]);
                }
                return key;
            };
            std::vector<std::pair<std::uint64_t, FElem>> acc;
            acc.reserve(terms_.size() * o.terms_.size());
            for (const auto& a : terms_)
                for (const auto& b : o.terms_)
                    acc.emplace_back(pack(a.first, b.first), a.second * b.second);
            std::sort(acc.begin(), acc.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            MultiLaurent r(k_);
            r.terms_.reserve(acc.size());
            for (std::size_t i = 0; i < acc.size();) {
                FElem c = std::move(acc[i].second);
                std::size_t j = i + 1;
                for (; j < acc.size() && acc[j].first == acc[i].first; ++j) c += acc[j].second;
                if (!c.isZero()) {
                    Exp e(static_cast<std::size_t>(k_));
                    std::uint64_t key = acc[i].first;
                    for (int v = k_ - 1; v >= 0; --v) {
                        e[static_cast<std::size_t>(v)] = static_cast<int>(
                            static_cast<long>(key & 0xffffu) + lo[static_cast<std::size_t>(v)]);
                        key >>= 16;
                    }
                    r.terms_.push_back({std::move(e), std::move(c)});
                }
                i = j;
            }
            return r;
        }
    }
    std::map<Exp, FElem> acc;
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) {
            FElem c = a.second * b.second;
            if (c.isZero()) continue;
            auto [it, fresh] = acc.try_emplace(addExp(a.first, b.first), c);
            if (!fresh) {
                it->second += c;
                if (it->second.isZero()) acc.erase(it);
            }
        }
    MultiLaurent r(k_);
    r.terms_.assign(acc.begin(), acc.end());
    return r;
}

MultiLaurent MultiLaurent::operator*(const FElem& s) const {
    if (s.isZero()) return MultiLaurent(k_);
    MultiLaurent r(k_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.first, t.second * s});
    return r;
}

MultiLaurent MultiLaurent::shifted(const Exp& e) const {
    MultiLaurent r(k_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({addExp(t.first, e), t.second});
    return r;
}

MultiLaurent MultiLaurent::applyPerm(std::span<const int> perm) const {
    MultiLaurent r(k_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exp e(static_cast<std::size_t>(k_), 0);
        for (int i = 0; i < k_; ++i) e[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = t.first[static_cast<std::size_t>(i)];
        r.terms_.push_back({std::move(e), t.second});
    }
    r.sortMerge();
    return r;
}

MultiLaurent MultiLaurent::embed(int newArity, int offset) const {
    if (offset < 0 || k_ + offset > newArity)
        throw std::invalid_argument("MultiLaurent::embed: range");
    MultiLaurent r(newArity);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exp e(static_cast<std::size_t>(newArity), 0);
        std::copy(t.first.begin(), t.first.end(), e.begin() + offset);
        r.terms_.push_back({std::move(e), t.second});
    }
    r.sortMerge();
    return r;
}

MultiLaurent MultiLaurent::substVar(int i, const FElem& c, const Exp& m) const {
    if (m.at(static_cast<std::size_t>(i)) != 0)
        throw std::invalid_argument("MultiLaurent::substVar: self-referential substitution");
    MultiLaurent r(k_);
    for (const auto& t : terms_) {
        int e = t.first[static_cast<std::size_t>(i)];
        Exp ne = t.first;
        ne[static_cast<std::size_t>(i)] = 0;
        for (std::size_t v = 0; v < ne.size(); ++v) ne[v] += e * m[v];
        FElem coeff = t.second * (e == 0 ? FElem(1) : c.pow(e));
        if (!coeff.isZero()) r.terms_.push_back({std::move(ne), std::move(coeff)});
    }
    r.sortMerge();
    return r;
}

FElem MultiLaurent::evalAll(std::span<const FElem> vals) const {
    FElem acc;
    for (const auto& t : terms_) {
        FElem v = t.second;
        for (int i = 0; i < k_; ++i) {
            int e = t.first[static_cast<std::size_t>(i)];
            if (e == 0) continue;
            const FElem& x = vals[static_cast<std::size_t>(i)];
            if (x.isZero() && e < 0) throw PoleHit("evalAll: negative power of zero");
            v *= x.pow(e);
        }
        acc += v;
    }
    return acc;
}

MultiLaurent MultiLaurent::invertVars() const {
    MultiLaurent r(k_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exp e(t.first.size());
        for (std::size_t v = 0; v < e.size(); ++v) e[v] = -t.first[v];
        r.terms_.push_back({std::move(e), t.second});
    }
    r.sortMerge();
    return r;
}

std::pair<int, int> MultiLaurent::expRange(int i) const {
    if (terms_.empty()) return {0, 0};
    int lo = terms_[0].first[static_cast<std::size_t>(i)], hi = lo;
    for (const auto& t : terms_) {
        lo = std::min(lo, t.first[static_cast<std::size_t>(i)]);
        hi = std::max(hi, t.first[static_cast<std::size_t>(i)]);
    }
    return {lo, hi};
}

std::map<int, MultiLaurent> MultiLaurent::byVar(int i) const {
    std::map<int, MultiLaurent> out;
    for (const auto& t : terms_) {
        Exp e = t.first;
        int p = e[static_cast<std::size_t>(i)];
        e[static_cast<std::size_t>(i)] = 0;
        auto [it, fresh] = out.try_emplace(p, MultiLaurent(k_));
        it->second.terms_.push_back({std::move(e), t.second});
    }
    for (auto& [p, f] : out) f.sortMerge();
    return out;
}

int MultiLaurent::totalDegreeOfTerm(std::size_t t) const {
    const Exp& e = terms_.at(t).first;
    return std::accumulate(e.begin(), e.end(), 0);
}

std::map<int, MultiLaurent> MultiLaurent::homogeneous() const {
    std::map<int, MultiLaurent> out;
    for (const auto& t : terms_) {
        int d = std::accumulate(t.first.begin(), t.first.end(), 0);
        auto [it, fresh] = out.try_emplace(d, MultiLaurent(k_));
        it->second.terms_.push_back(t);
    }
    return out;
}

MultiLaurent MultiLaurent::filtered(const std::function<bool(const Exp&)>& pred) const {
    MultiLaurent out(k_);
    for (const auto& t : terms_)
        if (pred(t.first)) out.terms_.push_back(t);
    return out;  // a subset of sorted terms stays sorted
}

bool MultiLaurent::isSymmetric() const {
    std::vector<int> perm(static_cast<std::size_t>(k_));
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = 0; i + 1 < k_; ++i) {
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i) + 1]);
        if (applyPerm(perm) != *this) return false;
        std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(i) + 1]);
    }
    return true;
}

std::optional<MultiLaurent> MultiLaurent::divExact(const MultiLaurent& d) const {
    if (k_ != d.k_) throw std::invalid_argument("MultiLaurent: arity mismatch");
    if (d.isZero()) throw std::invalid_argument("MultiLaurent::divExact: zero divisor");
    if (isZero()) return MultiLaurent(k_);

    auto cmp = [](const Exp& a, const Exp& b) { return gradedLexLess(a, b); };
    std::map<Exp, FElem, decltype(cmp)> rem(cmp);
    for (const auto& t : terms_) rem.emplace(t.first, t.second);

    // Leading term of the divisor under graded-lex.
    const Term* dl = &d.terms_[0];
    for (const auto& t : d.terms_)
        if (gradedLexLess(dl->first, t.first)) dl = &t;

    // Exact quotients are confined to a box: taking the lex order with
    // variable i dominant, the leading term of a product is the product of
    // leading terms, so max_i(q) = max_i(num) - max_i(den) and likewise for
    // the minima.  Any tentative quotient term outside the box disproves
    // exactness, and the box also forces termination.
    std::vector<int> qlo(static_cast<std::size_t>(k_)), qhi(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) {
        auto [nlo, nhi] = expRange(i);
        auto [dlo, dhi] = d.expRange(i);
        qlo[static_cast<std::size_t>(i)] = nlo - dlo;
        qhi[static_cast<std::size_t>(i)] = nhi - dhi;
    }

    MultiLaurent q(k_);
    while (!rem.empty()) {
        auto lead = std::prev(rem.end());
        Exp qe = subExp(lead->first, dl->first);
        for (int i = 0; i < k_; ++i)
            if (qe[static_cast<std::size_t>(i)] < qlo[static_cast<std::size_t>(i)] ||
                qe[static_cast<std::size_t>(i)] > qhi[static_cast<std::size_t>(i)])
                return std::nullopt;
        FElem qc = lead->second / dl->second;
        q.terms_.push_back({qe, qc});
        for (const auto& t : d.terms_) {
            FElem c = qc * t.second;
            auto [it, fresh] = rem.try_emplace(addExp(qe, t.first), -c);
            if (!fresh) {
                it->second -= c;
                if (it->second.isZero()) rem.erase(it);
            }
        }
    }
    q.sortMerge();
    return q;
}

std::string MultiLaurent::toString(const std::function<std::string(int)>& varName) const {
    if (terms_.empty()) return "0";
    auto name = varName ? varName : [](int i) { return "z" + std::to_string(i + 1); };
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.second.toString() << ")";
        for (std::size_t i = 0; i < t.first.size(); ++i)
            if (t.first[i] != 0) os << "*" << name(static_cast<int>(i)) << "^" << t.first[i];
    }
    return os.str();
}

MultiLaurent symmetrize(const MultiLaurent& f) {
    int k = f.arity();
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    MultiLaurent acc(k);
    do {
        acc += f.applyPerm(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

MultiLaurent ShufForm::Dk(int arity) {
    MultiLaurent d = MultiLaurent::one(arity);
    for (int i = 0; i < arity; ++i)
        for (int j = i + 1; j < arity; ++j) {
            d *= MultiLaurent::var(arity, i, 1, FElem::qpow(1)) - MultiLaurent::var(arity, j);
            d *= MultiLaurent::var(arity, j, 1, FElem::qpow(1)) - MultiLaurent::var(arity, i);
        }
    return d;
}

ShufForm ShufForm::operator+(const ShufForm& o) const {
    if (k_ != o.k_) throw std::invalid_argument("ShufForm: arity mismatch");
    return {k_, num_ + o.num_};
}

ShufForm ShufForm::operator-(const ShufForm& o) const {
    if (k_ != o.k_) throw std::invalid_argument("ShufForm: arity mismatch");
    return {k_, num_ - o.num_};
}

FElem ShufForm::evalPhi() const {
    std::vector<FElem> vals;
    vals.reserve(static_cast<std::size_t>(k_));
    for (int i = 0; i < k_; ++i) vals.push_back(FElem::q1(-i));
    FElem den = Dk(k_).evalAll(vals);
    if (den.isZero()) throw PoleHit("evalPhi: D_k vanishes at (1, q1^{-1}, ...)");
    return num_.evalAll(vals) / den;
}

ShufForm shufCanonical(const MultiLaurent& num, const MultiLaurent& den) {
    int k = num.arity();
    if (den.isZero()) throw std::invalid_argument("shufCanonical: zero denominator");
    auto q = (num * ShufForm::Dk(k)).divExact(den);
    if (!q) throw NotInAlgebra("shufCanonical: denominator does not divide num * D_k");
    if (!q->isSymmetric()) throw NotInAlgebra("shufCanonical: numerator is not symmetric");
    return {k, std::move(*q)};
}

RegionOrder RegionOrder::chain(int arity) {
    RegionOrder o;
    o.rank.resize(static_cast<std::size_t>(arity));
    std::iota(o.rank.begin(), o.rank.end(), 0);
    return o;
}

RegionOrder RegionOrder::equal(int arity, int pVar) {
    RegionOrder o;
    o.rank.assign(static_cast<std::size_t>(arity), 0);
    o.pVar = pVar;
    return o;
}

int RegionOrder::qpSign(int a, int b, int cp) {
    if (a != 0) return a > 0 ? 1 : -1;
    if (b != 0) return b > 0 ? 1 : -1;
    if (cp != 0) return cp > 0 ? -1 : 1;
    return 0;
}

namespace {

/// Sign of log|c * z^v| under ord, where c = q1^qa q2^qb (already monomial).
/// Returns +1 (large), -1 (small), or 0 (cannot separate).
int magnitudeSign(const RegionOrder& ord, const MultiLaurent::Exp& v, int qa, int qb) {
    // Per-rank exponent sums, largest magnitude class (smallest rank) first.
    std::map<int, long> sums;
    int pexp = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        if (static_cast<int>(i) == ord.pVar) {
            pexp += v[i];
        } else {
            sums[ord.rank.at(i)] += v[i];
        }
    }
    for (const auto& [rk, s] : sums)
        if (s != 0) return s > 0 ? 1 : -1;
    return RegionOrder::qpSign(qa, qb, pexp);
}

/// Monomial exponents (a, b) of an FElem that is a unit q-monomial times a
/// rational number; nullopt otherwise.
std::optional<std::pair<int, int>> qMonomialExps(const FElem& c) {
    if (c.num().size() != 1 || c.den().size() != 1) return std::nullopt;
    QExp n = c.num().terms()[0].first, d = c.den().terms()[0].first;
    return std::make_pair(n.a - d.a, n.b - d.b);
}

}  // namespace

bool isSmallMonomial(const RegionOrder& ord, const MultiLaurent::Exp& v, int qa, int qb) {
    return magnitudeSign(ord, v, qa, qb) < 0;
}

void GeomFrac::divideBinomial(const RegionOrder& ord, FElem c1, MultiLaurent::Exp u, FElem c2,
                              MultiLaurent::Exp w, int mult) {
    if (mult < 0) throw std::invalid_argument("GeomFrac::divideBinomial: negative multiplicity");
    if (mult == 0) return;
    int k = num_.arity();
    auto absorbMonomial = [&](const FElem& c, const MultiLaurent::Exp& e) {
        // Numerator picks up (c z^e)^{-mult}.
        MultiLaurent::Exp s(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = -mult * e[i];
        num_ = num_.shifted(s) * c.pow(-mult);
    };
    if (c1.isZero() && c2.isZero())
        throw std::invalid_argument("GeomFrac::divideBinomial: zero divisor");
    if (c2.isZero()) {
        absorbMonomial(c1, u);
        return;
    }
    if (c1.isZero()) {
        absorbMonomial(-c2, w);
        return;
    }

    // Which monomial dominates?  Test smallness of (c2/c1) z^{w-u}.
    MultiLaurent::Exp delta = subExp(w, u);
    FElem ratio = c2 / c1;
    auto qe = qMonomialExps(ratio);
    // Hierarchical z-magnitudes decide first; only when they are balanced does
    // the q/p prefactor matter, and then it must be an actual monomial.
    MultiLaurent::Exp zOnly = delta;
    if (ord.pVar >= 0) zOnly[static_cast<std::size_t>(ord.pVar)] = 0;
    int sign = magnitudeSign(ord, zOnly, 0, 0);
    if (sign == 0) {
        if (!qe)
            throw AmbiguousDirection(
                "divideBinomial: non-monomial coefficient with balanced z-magnitudes");
        sign = magnitudeSign(ord, delta, qe->first, qe->second);
    }
    if (sign == 0)
        throw AmbiguousDirection("divideBinomial: region does not separate the two monomials");

    FElem c;
    MultiLaurent::Exp v;
    if (sign < 0) {
        // c1 z^u (1 - (c2/c1) z^{w-u})
        absorbMonomial(c1, u);
        c = ratio;
        v = delta;
    } else {
        // -c2 z^w (1 - (c1/c2) z^{u-w})
        absorbMonomial(-c2, w);
        c = c1 / c2;
        v = subExp(u, w);
    }
    for (auto& f : dens_)
        if (f.v == v && f.c == c) {
            f.mult += mult;
            return;
        }
    dens_.push_back({std::move(c), std::move(v), mult});
}

void GeomFrac::constantTerm(const RegionOrder& ord, int victim) {
    (void)ord;
    std::vector<Fac> live, rest;
    for (auto& f : dens_)
        (f.v[static_cast<std::size_t>(victim)] != 0 ? live : rest).push_back(std::move(f));
    dens_ = std::move(rest);

    int k = num_.arity();
    auto keepZero = [&](const MultiLaurent& p) {
        return p.filtered([&](const MultiLaurent::Exp& e) {
            return e[static_cast<std::size_t>(victim)] == 0;
        });
    };

    if (live.empty()) {
        num_ = keepZero(num_);
        return;
    }

    int s = live[0].v[static_cast<std::size_t>(victim)] > 0 ? 1 : -1;
    for (const auto& f : live)
        if ((f.v[static_cast<std::size_t>(victim)] > 0 ? 1 : -1) != s)
            throw AmbiguousDirection(
                "constantTerm: victim appears with both signs among expansion factors");

    // Factors step the victim exponent by s each power; the numerator spread
    // on the opposite side bounds the expansion depth.
    auto [lo, hi] = num_.expRange(victim);
    int depth = s < 0 ? std::max(0, hi) : std::max(0, -lo);

    MultiLaurent series = MultiLaurent::one(k);
    for (const auto& f : live) {
        MultiLaurent fac(k);
        MultiLaurent::Exp step = f.v;
        int perPower = std::abs(step[static_cast<std::size_t>(victim)]);
        MultiLaurent::Exp e(static_cast<std::size_t>(k), 0);
        FElem cp(1);
        for (int j = 0; j * perPower <= depth; ++j) {
            fac += MultiLaurent::mono(k, e, cp * FElem(LaurentQ2(geomBinom(j, f.mult))));
            e = addExp(e, step);
            cp *= f.c;
        }
        series *= fac;
        // Truncate: victim excursions beyond depth can never return to 0.
        series = series.filtered([&](const MultiLaurent::Exp& e) {
            return std::abs(e[static_cast<std::size_t>(victim)]) <= depth;
        });
    }
    num_ = keepZero(num_ * series);
}

FElem GeomFrac::fullConstantTerm(const RegionOrder& ord, std::span<const int> victims) {
    for (int v : victims) constantTerm(ord, v);
    if (!dens_.empty())
        throw NonBinomialDenominator("fullConstantTerm: residual denominator factors");
    if (num_.isZero()) return FElem(0);
    if (num_.size() != 1 || num_.terms()[0].first != MultiLaurent::Exp(num_.terms()[0].first.size(), 0))
        throw NonBinomialDenominator("fullConstantTerm: non-constant residue");
    return num_.terms()[0].second;
}

}  // namespace shufkit
