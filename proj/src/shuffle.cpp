/**
 * @file shuffle.cpp
 * @brief Shuffle-algebra products and generator families.
 *
 * All symmetrizations are computed over a common denominator: for a sum
 * over S_k of sigma(N) / (sigma(V) sigma(Q) sigma(A)), each summand is
 * multiplied by the complementary factors that promote its denominator to
 * the symmetric D_k (and the full binomial products V, B), after which a
 * single exact division recovers the canonical numerator.  Exactness of
 * that division is precisely the statement that the element lies in the
 * algebra, so it is asserted rather than assumed.
 */
#include "shufkit/shuffle.hpp"

#include <algorithm>
#include <numeric>

namespace shufkit {

namespace {

using Exp = MultiLaurent::Exp;

/// Binomial c1 z_a - c2 z_b in the given arity.
MultiLaurent zbin(int arity, const FElem& c1, int a, const FElem& c2, int b) {
    return MultiLaurent::var(arity, a, 1, c1) - MultiLaurent::var(arity, b, 1, c2);
}

int permSign(const std::vector<int>& perm) {
    int inv = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

/// V = prod_{i<j} (z_j - z_i): the zeta-denominator Vandermonde.
MultiLaurent vandermonde(int k) {
    MultiLaurent v = MultiLaurent::one(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) v *= zbin(k, FElem(1), j, FElem(1), i);
    return v;
}

/// C = prod_{i<j} (z_j - q1 z_i)(z_j - q2 z_i): the zeta numerators.
MultiLaurent zetaNums(int k) {
    MultiLaurent c = MultiLaurent::one(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            c *= zbin(k, FElem(1), j, FElem::q1(), i);
            c *= zbin(k, FElem(1), j, FElem::q2(), i);
        }
    return c;
}

/// compQ_sigma = prod_{i<j} (q z_{sigma(j)} - z_{sigma(i)}): the D_k factors
/// complementary to sigma(prod_{i<j} (z_j - q z_i)).
MultiLaurent compQ(int k, const std::vector<int>& perm) {
    MultiLaurent c = MultiLaurent::one(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            c *= zbin(k, FElem::qpow(1), perm[static_cast<std::size_t>(j)], FElem(1),
                      perm[static_cast<std::size_t>(i)]);
    return c;
}

int floorDiv(long a, long b) {
    long q = a / b, r = a % b;
    return static_cast<int>(r != 0 && ((r < 0) != (b < 0)) ? q - 1 : q);
}

int ceilDiv(long a, long b) { return -floorDiv(-a, b); }

}  // namespace

FElem zetaAt(const FElem& x) {
    FElem den = (FElem(1) - x) * (FElem(1) - x * FElem::qpow(1));
    if (den.isZero()) throw PoleHit("zetaAt: pole of zeta");
    return (FElem(1) - x * FElem::q1()) * (FElem(1) - x * FElem::q2()) / den;
}

TruncSeries zetaInvSeries(int order) {
    TruncSeries s("u", order);
    s[0] = FElem(1);
    for (int n = 1; n <= order; ++n) {
        // (q1^n - q2^n)/(q1 - q2) is the complete homogeneous h_{n-1}(q1,q2).
        FElem h = (FElem::q1(n) - FElem::q2(n)) / (FElem::q1() - FElem::q2());
        s[n] = -FElem::delta() * h;
    }
    return s;
}

ShufForm symZeta(const MultiLaurent& rho) {
    int k = rho.arity();
    if (k <= 1) return {k, rho};
    MultiLaurent base = rho * zetaNums(k);
    int csign = (k * (k - 1) / 2) % 2 == 0 ? 1 : -1;

    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    MultiLaurent total(k);
    do {
        MultiLaurent term = base.applyPerm(perm) * compQ(k, perm);
        int s = permSign(perm) * csign;
        total += s > 0 ? term : -term;
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto num = total.divExact(vandermonde(k));
    if (!num) throw std::logic_error("symZeta: Vandermonde division not exact");
    return {k, std::move(*num)};
}

ShufForm symKernel(const MultiLaurent& g, const FElem& beta) {
    int k = g.arity();
    if (k <= 1) return {k, g};

    // Interior chain prod_{i<k} (1 - beta z_{i+1}/z_i) = A / prod_{i<k} z_i
    // with A = prod (z_i - beta z_{i+1}); cleared against the full ordered
    // product B = prod_{a != b} (z_a - beta z_b).
    Exp headVars(static_cast<std::size_t>(k), 1);
    headVars[static_cast<std::size_t>(k) - 1] = 0;
    MultiLaurent base = g.shifted(headVars) * zetaNums(k);

    MultiLaurent bProd = MultiLaurent::one(k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            if (a != b) bProd *= zbin(k, FElem(1), a, beta, b);

    int csign = (k * (k - 1) / 2) % 2 == 0 ? 1 : -1;
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    MultiLaurent total(k);
    do {
        MultiLaurent term = base.applyPerm(perm) * compQ(k, perm);
        // complement of sigma(A) inside B: skip the adjacency pairs.
        std::vector<std::pair<int, int>> adj;
        for (int i = 0; i + 1 < k; ++i)
            adj.emplace_back(perm[static_cast<std::size_t>(i)],
                             perm[static_cast<std::size_t>(i) + 1]);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b) {
                if (a == b) continue;
                if (std::find(adj.begin(), adj.end(), std::make_pair(a, b)) != adj.end())
                    continue;
                term *= zbin(k, FElem(1), a, beta, b);
            }
        int s = permSign(perm) * csign;
        total += s > 0 ? term : -term;
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto num = total.divExact(vandermonde(k) * bProd);
    if (!num) throw std::logic_error("symKernel: interior denominators failed to cancel");
    return {k, std::move(*num)};
}

void ShufElem::insert(int k, int n, ShufForm f, std::optional<MultiLaurent> dual) {
    if (f.isZero()) return;
    // Grading sanity: numerator homogeneous of degree n + deg D_k.
    int want = n + k * (k - 1);
    for (const auto& t : f.num().terms())
        if (std::accumulate(t.first.begin(), t.first.end(), 0) != want)
            throw std::logic_error("ShufElem: inhomogeneous component");
    auto [it, fresh] = comps_.try_emplace({k, n}, Comp{std::move(f), std::move(dual)});
    if (!fresh) throw std::logic_error("ShufElem::insert: duplicate component");
}

ShufElem ShufElem::scalar(FElem c) {
    ShufElem r;
    if (!c.isZero()) {
        MultiLaurent m = MultiLaurent::mono(0, {}, c);
        r.insert(0, 0, ShufForm(0, m), m);
    }
    return r;
}

ShufElem ShufElem::fromForm(int degree, ShufForm f, std::optional<MultiLaurent> dual) {
    ShufElem r;
    r.insert(f.arity(), degree, std::move(f), std::move(dual));
    return r;
}

const ShufElem::Comp& ShufElem::sole() const {
    if (comps_.size() != 1) throw std::logic_error("ShufElem::sole: not homogeneous");
    return comps_.begin()->second;
}

bool operator==(const ShufElem& a, const ShufElem& b) {
    if (a.comps_.size() != b.comps_.size()) return false;
    for (auto ia = a.comps_.begin(), ib = b.comps_.begin(); ia != a.comps_.end(); ++ia, ++ib)
        if (ia->first != ib->first || ia->second.form != ib->second.form) return false;
    return true;
}

ShufElem ShufElem::operator+(const ShufElem& o) const {
    ShufElem r;
    for (const auto& [key, c] : comps_) {
        auto it = o.comps_.find(key);
        if (it == o.comps_.end()) {
            r.insert(key.first, key.second, c.form, c.dual);
        } else {
            std::optional<MultiLaurent> dual;
            if (c.dual && it->second.dual) dual = *c.dual + *it->second.dual;
            r.insert(key.first, key.second, c.form + it->second.form, std::move(dual));
        }
    }
    for (const auto& [key, c] : o.comps_)
        if (!comps_.contains(key)) r.insert(key.first, key.second, c.form, c.dual);
    return r;
}

ShufElem ShufElem::operator-() const {
    ShufElem r;
    for (const auto& [key, c] : comps_) {
        std::optional<MultiLaurent> dual;
        if (c.dual) dual = -*c.dual;
        r.insert(key.first, key.second, -c.form, std::move(dual));
    }
    return r;
}

ShufElem ShufElem::operator-(const ShufElem& o) const { return *this + (-o); }

ShufElem ShufElem::operator*(const FElem& s) const {
    ShufElem r;
    if (s.isZero()) return r;
    for (const auto& [key, c] : comps_) {
        std::optional<MultiLaurent> dual;
        if (c.dual) dual = *c.dual * s;
        r.insert(key.first, key.second, c.form * s, std::move(dual));
    }
    return r;
}

namespace {

/// One component-pair shuffle product over the common denominator V_K D_K.
ShufForm productForm(const ShufForm& f, const ShufForm& fp) {
    int k = f.arity(), kp = fp.arity(), K = k + kp;
    MultiLaurent base = f.num().embed(K, 0) * fp.num().embed(K, k);
    for (int i = 0; i < k; ++i)
        for (int j = k; j < K; ++j) {
            base *= zbin(K, FElem(1), j, FElem::q1(), i);
            base *= zbin(K, FElem(1), j, FElem::q2(), i);
        }
    int csign = (k * kp) % 2 == 0 ? 1 : -1;

    // V_K-oriented complement machinery: cross pairs are {sigma(i), sigma(j)}
    // for i < k <= j.
    std::vector<int> perm(static_cast<std::size_t>(K));
    std::iota(perm.begin(), perm.end(), 0);
    MultiLaurent total(K);
    do {
        std::vector<std::vector<bool>> isCross(static_cast<std::size_t>(K),
                                               std::vector<bool>(static_cast<std::size_t>(K)));
        int s = csign;
        MultiLaurent term = base.applyPerm(perm);
        for (int i = 0; i < k; ++i)
            for (int j = k; j < K; ++j) {
                int a = perm[static_cast<std::size_t>(i)], b = perm[static_cast<std::size_t>(j)];
                if (b < a) s = -s;  // orientation vs V_K = prod_{a<b}(z_b - z_a)
                isCross[static_cast<std::size_t>(std::min(a, b))]
                       [static_cast<std::size_t>(std::max(a, b))] = true;
                term *= zbin(K, FElem::qpow(1), b, FElem(1), a);
            }
        for (int a = 0; a < K; ++a)
            for (int b = a + 1; b < K; ++b)
                if (!isCross[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])
                    term *= zbin(K, FElem(1), b, FElem(1), a);
        total += s > 0 ? term : -term;
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto num = total.divExact(vandermonde(K));
    if (!num) throw std::logic_error("shuffleProduct: Vandermonde division not exact");
    // The sum over all of S_K counts each (k,k')-shuffle k!*k'! times; divide it
    // back out so the product is associative across arities.
    Int f1, f2;
    mpz_fac_ui(f1.get_mpz_t(), static_cast<unsigned long>(k));
    mpz_fac_ui(f2.get_mpz_t(), static_cast<unsigned long>(kp));
    return {K, *num * FElem(LaurentQ2(1), LaurentQ2(f1 * f2))};
}

}  // namespace

ShufElem ShufElem::operator*(const ShufElem& o) const {
    ShufElem r;
    for (const auto& [ka, ca] : comps_)
        for (const auto& [kb, cb] : o.comps_) {
            int k = ka.first, kp = kb.first;
            ShufElem part;
            if (k == 0 || kp == 0) {
                // Scalar component: plain scaling.
                const FElem s = (k == 0 ? ca : cb).form.num().terms()[0].second;
                const Comp& other = k == 0 ? cb : ca;
                std::optional<MultiLaurent> dual;
                if (other.dual) dual = *other.dual * s;
                part = fromForm(k == 0 ? kb.second : ka.second, other.form * s,
                                std::move(dual));
            } else {
                std::optional<MultiLaurent> dual;
                if (ca.dual && cb.dual)
                    dual = ca.dual->embed(k + kp, 0) * cb.dual->embed(k + kp, k);
                part = fromForm(ka.second + kb.second, productForm(ca.form, cb.form),
                                std::move(dual));
            }
            r += part;
        }
    return r;
}

ShufElem genE(const std::vector<int>& d) {
    int k = static_cast<int>(d.size());
    if (k < 1) throw std::invalid_argument("genE: empty exponent vector");
    int n = std::accumulate(d.begin(), d.end(), 0);
    MultiLaurent g = MultiLaurent::mono(k, d, FElem(1));
    ShufForm f = symKernel(g, FElem::qpow(1));
    std::optional<MultiLaurent> dual;
    if (k == 1) dual = g;
    return ShufElem::fromForm(n, std::move(f), std::move(dual));
}

std::vector<int> staircaseD(int k, int n) {
    std::vector<int> d(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i) {
        d[static_cast<std::size_t>(i) - 1] = ceilDiv(static_cast<long>(n) * i, k) -
                                             ceilDiv(static_cast<long>(n) * (i - 1), k) +
                                             (i == k ? 1 : 0) - (i == 1 ? 1 : 0);
    }
    return d;
}

ShufElem genEkn(int k, int n) {
    if (k < 1) throw std::invalid_argument("genEkn: arity must be positive");
    int s = n == 0 ? k : std::gcd(k, std::abs(n));
    // Prefactor (-q)^{s-1}: the sign makes the E_{ks,ns} family satisfy the
    // power-sum conversion eqn and the small-triangle commutators exactly.
    ShufElem e = genE(staircaseD(k, n)) * FElem::qpow(s - 1);
    return s % 2 == 0 ? -e : e;
}

ShufElem genT(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("genT: negative index");
    if (n == 0) return k == 0 ? ShufElem::scalar(FElem(1)) : ShufElem();
    std::vector<int> d(static_cast<std::size_t>(n), 0);
    d.back() = k;
    ShufElem e = genE(d);
    return k % 2 == 0 ? -e : e;
}

ShufElem commutator(const ShufElem& a, const ShufElem& b) { return a * b - b * a; }

std::vector<ShufElem> newtonConvert(NewtonFamily fam, int k0, int n0, int sMax) {
    std::vector<ShufElem> e{ShufElem::scalar(FElem(1))};
    for (int s = 1; s <= sMax; ++s) e.push_back(genEkn(k0 * s, n0 * s));

    // P_s = -s(-1)^s E_s - sum_{j=1}^{s-1} (-1)^j P_{s-j} E_j, from
    // differentiating sum E_s (-x)^{-s} = exp(-sum P_s / (s x^s)).
    std::vector<ShufElem> p{ShufElem()};  // index 0 unused
    for (int s = 1; s <= sMax; ++s) {
        int sg = s % 2 == 0 ? 1 : -1;
        ShufElem acc = e[static_cast<std::size_t>(s)] * FElem(-s * sg);
        for (int j = 1; j < s; ++j) {
            ShufElem t = p[static_cast<std::size_t>(s - j)] * e[static_cast<std::size_t>(j)];
            acc = j % 2 == 0 ? acc - t : acc + t;
        }
        p.push_back(std::move(acc));
    }
    if (fam == NewtonFamily::P) return {p.begin() + 1, p.end()};

    // H_s = (1/s)(P~_s + sum_{j=1}^{s-1} P~_{s-j} H_j); Q uses the rescaled
    // P~_s = (1 - q^{-s}) P_s, H uses P~ = P.
    std::vector<ShufElem> pt{ShufElem()};
    for (int s = 1; s <= sMax; ++s)
        pt.push_back(fam == NewtonFamily::Q
                         ? p[static_cast<std::size_t>(s)] * (FElem(1) - FElem::qpow(-s))
                         : p[static_cast<std::size_t>(s)]);
    std::vector<ShufElem> h{ShufElem::scalar(FElem(1))};
    for (int s = 1; s <= sMax; ++s) {
        ShufElem acc = pt[static_cast<std::size_t>(s)];
        for (int j = 1; j < s; ++j)
            acc += pt[static_cast<std::size_t>(s - j)] * h[static_cast<std::size_t>(j)];
        h.push_back(acc * FElem::ratio(1, s));
    }
    return {h.begin() + 1, h.end()};
}

std::vector<ShufElem> newtonEFromP(const std::vector<ShufElem>& p) {
    // s(-1)^s E_s = -sum_{j=0}^{s-1} P_{s-j} (-1)^j E_j.
    std::vector<ShufElem> e{ShufElem::scalar(FElem(1))};
    int sMax = static_cast<int>(p.size());
    for (int s = 1; s <= sMax; ++s) {
        ShufElem acc;
        for (int j = 0; j < s; ++j) {
            ShufElem t = p[static_cast<std::size_t>(s - j) - 1] * e[static_cast<std::size_t>(j)];
            acc = j % 2 == 0 ? acc + t : acc - t;
        }
        int sg = s % 2 == 0 ? 1 : -1;
        e.push_back(acc * FElem::ratio(-sg, s));
    }
    return {e.begin() + 1, e.end()};
}

ShufElem genPExplicit(int variant, int k, int n) {
    if (variant != 1 && variant != 2) throw std::invalid_argument("genPExplicit: variant 1|2");
    if (k < 1) throw std::invalid_argument("genPExplicit: arity must be positive");
    int s = n == 0 ? k : std::gcd(k, std::abs(n));
    int a = k / s;

    Exp floorStairs(static_cast<std::size_t>(k));
    for (int i = 1; i <= k; ++i)
        floorStairs[static_cast<std::size_t>(i) - 1] =
            floorDiv(static_cast<long>(n) * i, k) - floorDiv(static_cast<long>(n) * (i - 1), k);

    FElem w = variant == 1 ? FElem::qpow(1) : FElem::q2(-1);
    MultiLaurent g(k);
    for (int t = 0; t < s; ++t) {
        Exp e = floorStairs;
        for (int j = 1; j <= t; ++j) {
            // ratio z_{a(s-j)+1} / z_{a(s-j)}, 1-based indices.
            int idx = a * (s - j);
            e[static_cast<std::size_t>(idx)] += 1;
            e[static_cast<std::size_t>(idx) - 1] -= 1;
        }
        g += MultiLaurent::mono(k, e, w.pow(t));
    }

    FElem beta = variant == 1 ? FElem::qpow(1) : FElem::q2(-1);
    FElem coeff(1);
    if (variant == 2)
        coeff = (FElem(1) - FElem::q2(s)) * (FElem(1) - FElem::qpow(-1)).pow(k) /
                ((FElem(1) - FElem::q2()).pow(k) * (FElem(1) - FElem::qpow(-s)));
    return ShufElem::fromForm(n, symKernel(g, beta) * coeff);
}

StaircaseCert staircaseReduce(const std::vector<int>& d) {
    int k = static_cast<int>(d.size());
    if (k < 1) throw std::invalid_argument("staircaseReduce: empty vector");
    int n = std::accumulate(d.begin(), d.end(), 0);
    std::vector<int> target = staircaseD(k, n);

    StaircaseCert cert;
    Exp m(d.begin(), d.end());
    while (!std::equal(m.begin(), m.end(), target.begin())) {
        int i = 0;
        while (m[static_cast<std::size_t>(i)] == target[static_cast<std::size_t>(i)]) ++i;
        if (m[static_cast<std::size_t>(i)] > target[static_cast<std::size_t>(i)]) {
            // z^m (1 - q z_{i+1}/z_i) = z^m - q z^{m'}:  push one unit right.
            cert.parts.emplace_back(i, MultiLaurent::mono(k, m, FElem::qpow(cert.a)));
            m[static_cast<std::size_t>(i)] -= 1;
            m[static_cast<std::size_t>(i) + 1] += 1;
            cert.a += 1;
        } else {
            // z^m = q^{-1} z^{m'} - q^{-1} z^{m'} (1 - q z_{i+1}/z_i).
            m[static_cast<std::size_t>(i)] += 1;
            m[static_cast<std::size_t>(i) + 1] -= 1;
            cert.a -= 1;
            cert.parts.emplace_back(i, MultiLaurent::mono(k, m, -FElem::qpow(cert.a)));
        }
    }

    // Re-expansion check: z^d - q^a z^target - sum (1 - q z_{i+1}/z_i) g_i = 0.
    MultiLaurent lhs = MultiLaurent::mono(k, Exp(d.begin(), d.end()), FElem(1)) -
                       MultiLaurent::mono(k, Exp(target.begin(), target.end()),
                                          FElem::qpow(cert.a));
    for (const auto& [i, g] : cert.parts) {
        MultiLaurent fac = MultiLaurent::one(k) -
                           MultiLaurent::var(k, i + 1, 1, FElem::qpow(1)) *
                               MultiLaurent::var(k, i, -1);
        lhs -= fac * g;
    }
    if (!lhs.isZero()) throw std::logic_error("staircaseReduce: certificate failed re-expansion");
    return cert;
}

}  // namespace shufkit
