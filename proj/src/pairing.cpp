/**
 * @file pairing.cpp
 * @brief Pairing in both contour presentations, orthogonal decomposition,
 *        and certified structure constants.
 */
#include "shufkit/pairing.hpp"


#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace shufkit {

namespace {

using Exp = MultiLaurent::Exp;

Exp zeroExp(int k) { return Exp(static_cast<std::size_t>(k), 0); }
Exp unitExp(int k, int i) {
    Exp e = zeroExp(k);
    e[static_cast<std::size_t>(i)] = 1;
    return e;
}
Exp addExp(Exp a, const Exp& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}
Exp negExp(Exp a) {
    for (auto& e : a) e = -e;
    return a;
}
Exp mulExp(Exp a, int m) {
    for (auto& e : a) e *= m;
    return a;
}
/// exponent vector of z_i / z_j at arity k.
Exp ratioExp(int k, int i, int j) {
    Exp e = zeroExp(k);
    e[static_cast<std::size_t>(i)] = 1;
    e[static_cast<std::size_t>(j)] = -1;
    return e;
}

int floorDiv(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
int ceilDiv(int a, int b) { return a >= 0 ? (a + b - 1) / b : -(-a / b); }

}  // namespace

int cmpSlope(const GenIndex& a, const GenIndex& b) {
    long long d = static_cast<long long>(a.n) * b.k - static_cast<long long>(b.n) * a.k;
    return d < 0 ? -1 : d > 0 ? 1 : 0;
}

int SlopeMonomial::totalArity() const {
    int k = 0;
    for (const auto& f : factors) k += f.k;
    return k;
}

int SlopeMonomial::totalDegree() const {
    int n = 0;
    for (const auto& f : factors) n += f.n;
    return n;
}

std::string SlopeMonomial::label() const {
    if (factors.empty()) return "1";
    std::ostringstream os;
    const char* fam = family == Family::E ? "E" : "P";
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) os << " ";
        os << fam << "_{" << factors[i].k << "," << factors[i].n << "}";
    }
    return os.str();
}

std::vector<SlopeMonomial> enumerateOrdered(int k, int n, const GenIndex& lo, const GenIndex& hi,
                                            SlopeMonomial::Family fam) {
    assert(lo.k > 0 && hi.k > 0 && k >= 1);
    std::vector<SlopeMonomial> out;
    std::vector<GenIndex> cur;
    auto rec = [&](auto&& self, int kRem, int nRem) -> void {
        if (kRem == 0) {
            if (nRem == 0) out.push_back({fam, cur});
            return;
        }
        for (int ki = 1; ki <= kRem; ++ki) {
            // slope window: lo <= ni/ki <= hi.
            int niLo = ceilDiv(ki * lo.n, lo.k);
            int niHi = floorDiv(ki * hi.n, hi.k);
            for (int ni = niLo; ni <= niHi; ++ni) {
                GenIndex f{ki, ni};
                if (!cur.empty()) {
                    int c = cmpSlope(f, cur.back());
                    if (c < 0 || (c == 0 && ki < cur.back().k)) continue;
                }
                int kp = kRem - ki, np = nRem - ni;
                if (kp == 0) {
                    if (np != 0) continue;
                } else {
                    // remaining slopes must sit in [slope(f), hi].
                    if (static_cast<long long>(np) * ki < static_cast<long long>(ni) * kp)
                        continue;
                    if (static_cast<long long>(np) * hi.k > static_cast<long long>(hi.n) * kp)
                        continue;
                }
                cur.push_back(f);
                self(self, kp, np);
                cur.pop_back();
            }
        }
    };
    rec(rec, k, n);
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- dual data

namespace {

/// Exact solve of sum_e x_e * cols[e] == target over F; free unknowns are
/// set to 0 and the solution is verified; nullopt when inconsistent.
std::optional<std::vector<FElem>> linearSolve(const std::vector<MultiLaurent>& cols,
                                              const MultiLaurent& target) {
    std::map<Exp, std::size_t> rows;
    auto rowOf = [&](const Exp& e) {
        return rows.emplace(e, rows.size()).first->second;
    };
    for (const auto& c : cols)
        for (const auto& t : c.terms()) rowOf(t.first);
    for (const auto& t : target.terms()) rowOf(t.first);

    std::size_t R = rows.size(), C = cols.size();
    std::vector<std::vector<FElem>> a(R, std::vector<FElem>(C + 1, FElem(0)));
    for (std::size_t j = 0; j < C; ++j)
        for (const auto& t : cols[j].terms()) a[rowOf(t.first)][j] = t.second;
    for (const auto& t : target.terms()) a[rowOf(t.first)][C] = t.second;

    std::vector<std::size_t> pivotRow(C, R);
    std::size_t r = 0;
    for (std::size_t j = 0; j < C && r < R; ++j) {
        std::size_t p = r;
        while (p < R && a[p][j].isZero()) ++p;
        if (p == R) continue;
        std::swap(a[p], a[r]);
        FElem inv = a[r][j].inverse();
        for (std::size_t jj = j; jj <= C; ++jj) a[r][jj] *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == r || a[i][j].isZero()) continue;
            FElem f = a[i][j];
            for (std::size_t jj = j; jj <= C; ++jj) a[i][jj] -= f * a[r][jj];
        }
        pivotRow[j] = r++;
    }
    for (std::size_t i = r; i < R; ++i)
        if (!a[i][C].isZero()) return std::nullopt;
    std::vector<FElem> x(C, FElem(0));
    for (std::size_t j = 0; j < C; ++j)
        if (pivotRow[j] < R) x[j] = a[pivotRow[j]][C];
    return x;
}

const MultiLaurent& symZetaNum(const Exp& e) {
    static std::map<Exp, MultiLaurent> cache;
    auto it = cache.find(e);
    if (it == cache.end()) {
        MultiLaurent m = MultiLaurent::mono(static_cast<int>(e.size()), e, FElem(1));
        it = cache.emplace(e, symZeta(m).num()).first;
    }
    return it->second;
}

MultiLaurent solveDualForm(const ShufForm& f, int n) {
    int k = f.arity();
    if (k <= 1) return f.num();
    for (int r = 0; r <= 4; ++r) {
        int lo = floorDiv(n, k) - r, hi = ceilDiv(n, k) + r;
        std::vector<Exp> exps;
        Exp cur = zeroExp(k);
        auto rec = [&](auto&& self, int i, int rem) -> void {
            if (i == k - 1) {
                if (rem >= lo && rem <= hi) {
                    cur[static_cast<std::size_t>(i)] = rem;
                    exps.push_back(cur);
                }
                return;
            }
            for (int e = lo; e <= hi; ++e) {
                cur[static_cast<std::size_t>(i)] = e;
                self(self, i + 1, rem - e);
            }
        };
        rec(rec, 0, n);
        std::vector<MultiLaurent> cols;
        cols.reserve(exps.size());
        for (const auto& e : exps) cols.push_back(symZetaNum(e));
        if (auto x = linearSolve(cols, f.num())) {
            MultiLaurent rho(k);
            for (std::size_t j = 0; j < exps.size(); ++j)
                if (!(*x)[j].isZero()) rho += MultiLaurent::mono(k, exps[j], (*x)[j]);
            return rho;
        }
    }
    throw NotInAlgebra("solveDualForm: no Laurent-polynomial dual in the exponent box");
}

}  // namespace

ShufElem withDual(const ShufElem& e) {
    ShufElem out;
    for (const auto& [key, comp] : e.comps()) {
        auto dual = comp.dual;
        if (!dual) dual = solveDualForm(comp.form, key.second);
        out += ShufElem::fromForm(key.second, comp.form, dual);
    }
    return out;
}

ShufElem genEknDual(int k, int n) {
    static std::map<std::pair<int, int>, ShufElem> cache;
    auto it = cache.find({k, n});
    if (it == cache.end()) it = cache.emplace(std::make_pair(k, n), withDual(genEkn(k, n))).first;
    return it->second;
}

ShufElem genPkn(int k, int n) {
    static std::map<std::pair<int, int>, ShufElem> cache;
    auto it = cache.find({k, n});
    if (it == cache.end()) {
        int g = std::gcd(k, std::abs(n));
        ShufElem p = newtonConvert(NewtonFamily::P, k / g, n / g, g)[static_cast<std::size_t>(g - 1)];
        it = cache.emplace(std::make_pair(k, n), withDual(p)).first;
    }
    return it->second;
}

ShufElem monoElem(const SlopeMonomial& m) {
    static std::map<SlopeMonomial, ShufElem> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    ShufElem out;
    if (m.factors.empty()) {
        out = ShufElem::scalar(FElem(1));
    } else {
        // The orthogonal realization multiplies the highest slope first;
        // the stored (displayed) factor order is the opposite multiplication.
        auto gen = m.family == SlopeMonomial::Family::E ? genEknDual : genPkn;
        auto last = m.factors.size() - 1;
        out = gen(m.factors[last].k, m.factors[last].n);
        for (std::size_t i = last; i-- > 0;) out = out * gen(m.factors[i].k, m.factors[i].n);
    }
    cache.emplace(m, out);
    return out;
}

// ------------------------------------------------------------------ pairing

namespace {

/// Pull the non-monomial coefficient denominators out of ml as one scalar:
/// afterwards every coefficient divides exactly, and the original equals the
/// returned scalar times the new ml.  Keeps all later coefficient arithmetic
/// free of polynomial-denominator normalization.
FElem clearDens(MultiLaurent& ml) {
    std::map<std::string, LaurentQ2> dens;
    for (const auto& [e, c] : ml.terms())
        if (!c.den().isMonomial()) dens.emplace(c.den().toString(), c.den());
    if (dens.empty()) return FElem(1);
    LaurentQ2 D = LaurentQ2::one();
    for (const auto& [key, d] : dens) D = D * d;
    MultiLaurent out(ml.arity());
    for (const auto& [e, c] : ml.terms()) {
        auto quot = D.divExact(c.den());
        out += MultiLaurent::mono(ml.arity(), e, FElem(c.num() * *quot));
    }
    ml = std::move(out);
    return FElem(LaurentQ2::one(), D);
}

/// <num/D_k, Sym[rho prod zeta]> as a nested-region constant term:
/// CT[ num * rho(1/z) * prod_{i<j} (1-z_i/z_j)(1-q z_i/z_j)
///     / (D_k * prod_{i<j} (1-q1 z_i/z_j)(1-q2 z_i/z_j)) ].
FElem pairCompOrdered(const ShufForm& f, const MultiLaurent& rho) {
    int k = f.arity();
    if (k == 0) return f.num().evalAll({}) * rho.evalAll({});
    RegionOrder ord = RegionOrder::chain(k);
    MultiLaurent fn = f.num(), rh = rho.invertVars();
    FElem scale = clearDens(fn) * clearDens(rh);
    MultiLaurent num = fn * rh;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            num *= MultiLaurent::one(k) - MultiLaurent::mono(k, ratioExp(k, i, j), FElem(1));
            num *= MultiLaurent::one(k) - MultiLaurent::mono(k, ratioExp(k, i, j), FElem::qpow(1));
        }
    GeomFrac g(std::move(num));
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            g.divideBinomial(ord, FElem::qpow(1), unitExp(k, i), FElem(1), unitExp(k, j));
            g.divideBinomial(ord, FElem::qpow(1), unitExp(k, j), FElem(1), unitExp(k, i));
            g.divideBinomial(ord, FElem(1), zeroExp(k), FElem::q1(), ratioExp(k, i, j));
            g.divideBinomial(ord, FElem(1), zeroExp(k), FElem::q2(), ratioExp(k, i, j));
        }
    std::vector<int> victims(static_cast<std::size_t>(k));
    std::iota(victims.begin(), victims.end(), 0);
    return scale * g.fullConstantTerm(ord, victims);
}

struct CTTerm {
    MultiLaurent num;
    std::vector<GeomFrac::Fac> facs;  // mult always 1
};

std::string termKey(CTTerm& t) {
    std::sort(t.facs.begin(), t.facs.end(), [](const GeomFrac::Fac& a, const GeomFrac::Fac& b) {
        return a.v != b.v ? a.v < b.v : a.c.toString() < b.c.toString();
    });
    std::ostringstream os;
    for (const auto& f : t.facs) {
        for (int e : f.v) os << e << ",";
        os << f.c.toString() << ";";
    }
    return os.str();
}

void mergeTerms(std::vector<CTTerm>& terms) {
    std::map<std::string, std::size_t> seen;
    std::vector<CTTerm> out;
    for (auto& t : terms) {
        if (t.num.isZero()) continue;
        auto [it, fresh] = seen.emplace(termKey(t), out.size());
        if (fresh)
            out.push_back(std::move(t));
        else
            out[it->second].num += t.num;
    }
    std::erase_if(out, [](const CTTerm& t) { return t.num.isZero(); });
    terms = std::move(out);
}

/// Magnitude sign of the monomial c z^v in the split-equal region: all
/// radii are infinitesimally separated (|z_0| > |z_1| > ... by less than
/// any q-power), so the q1/q2/p weight decides first and pure z-ratios
/// break ties by variable index.  c must be a monomial of F.
int eqMagSign(const FElem& c, const Exp& v, int pVar) {
    assert(c.num().isMonomial() && c.den().isMonomial());
    int qa = c.num().terms()[0].first.a - c.den().terms()[0].first.a;
    int qb = c.num().terms()[0].first.b - c.den().terms()[0].first.b;
    int s = RegionOrder::qpSign(qa, qb, v[static_cast<std::size_t>(pVar)]);
    if (s != 0) return s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (static_cast<int>(i) != pVar && v[i] != 0) return v[i] > 0 ? 1 : -1;
    return 0;
}

/// Rewrite the factor (1 - mu)^{-1} with mu large as -mu^{-1} (1 - mu^{-1})^{-1},
/// folding the flip monomial into num, so the factor's monomial is small.
void normalizeFac(MultiLaurent& num, GeomFrac::Fac& f, int pVar) {
    int s = eqMagSign(f.c, f.v, pVar);
    assert(s != 0);
    if (s < 0) return;
    Exp nv = f.v;
    for (auto& e : nv) e = -e;
    f.c = f.c.inverse();
    f.v = nv;
    num = num.shifted(nv) * (-f.c);
}

/// Binomial coefficient C(e, i) for integer e of either sign.
FElem binomFE(int e, int i) {
    Int n(1), d(1);
    for (int j = 0; j < i; ++j) {
        n *= e - j;
        d *= j + 1;
    }
    return FElem(LaurentQ2(n), LaurentQ2(d));
}

/// Truncated Taylor jets at x = b(1+t): coefficients of t^0..t^{ord-1},
/// each a sum of CTTerms (numerator plus symbolic (1 - c z^v)^{-1} factors).
using Jet = std::vector<std::vector<CTTerm>>;

Jet jetMul(const Jet& a, const Jet& b) {
    std::size_t ord = a.size();
    Jet out(ord);
    for (std::size_t i = 0; i < ord; ++i)
        for (std::size_t j = 0; i + j < ord; ++j)
            for (const auto& ta : a[i])
                for (const auto& tb : b[j]) {
                    CTTerm t{ta.num * tb.num, ta.facs};
                    t.facs.insert(t.facs.end(), tb.facs.begin(), tb.facs.end());
                    out[i + j].push_back(std::move(t));
                }
    return out;
}

/// Constant term of a single term in the victim variable as a sum of
/// residues: one per pole x = b inside the contour (the small monomials
/// with victim exponent -1, grouped for multiplicity) plus the residue at
/// x = 0.  Writing g/x = num x^{M-1} prod_P (1-a x)^{-1} / prod (x-b')^{m'}
/// with M = sum m', the order-m residue at b is
/// (1/b^{m-1}) [t^{m-1}] (num x^{M-1} prod_P ... prod_{b' != b} ...)|_{x=b(1+t)}.
void ctVictim(CTTerm term, int victim, int pVar, std::vector<CTTerm>& out) {
    int A = term.num.arity();
    auto vi = static_cast<std::size_t>(victim);
    std::vector<GeomFrac::Fac> P, rest;
    std::vector<std::pair<GeomFrac::Fac, int>> poles;  // (b monomial, multiplicity)
    int M = 0;
    for (auto f : term.facs) {
        if (f.v[vi] == 0) {
            rest.push_back(std::move(f));
            continue;
        }
        normalizeFac(term.num, f, pVar);
        assert(std::abs(f.v[vi]) == 1);
        if (f.v[vi] > 0) {
            P.push_back(std::move(f));
        } else {
            // (1 - mu)^{-1} with mu = b/x: pole at x = b = c z^{v + e_victim}.
            GeomFrac::Fac b{f.c, addExp(f.v, unitExp(A, victim)), 1};
            ++M;
            bool found = false;
            for (auto& [bb, m] : poles)
                if (bb.v == b.v && bb.c == b.c) {
                    ++m;
                    found = true;
                    break;
                }
            if (!found) poles.push_back({std::move(b), 1});
        }
    }
    if (term.num.isZero()) return;
    auto bPow = [&](const GeomFrac::Fac& b, int e) {
        return MultiLaurent::mono(A, mulExp(b.v, e), b.c.pow(e));
    };
    auto keepZero = [&](const MultiLaurent& p) {
        return p.filtered([&](const Exp& e) { return e[vi] == 0; });
    };

    // Residue at x = 0: ascending expansion, victim^0 coefficient.  Near 0
    // every pole monomial mu = b/x is large, so each pole copy expands as
    // -(x/b) - (x/b)^2 - ... and contributes only positive victim powers;
    // the numerator's negative spread bounds the depth.
    {
        int depth = std::max(0, -term.num.expRange(victim).first);
        if (depth >= M) {
            MultiLaurent res = term.num;
            auto clip = [&](const MultiLaurent& p) {
                return p.filtered(
                    [&](const Exp& e) { return std::abs(e[vi]) <= depth; });
            };
            for (const auto& f : P) {
                MultiLaurent ser(A);
                for (int j = 0; j <= depth; ++j)
                    ser += MultiLaurent::mono(A, mulExp(f.v, j), f.c.pow(j));
                res = clip(res * ser);
            }
            for (const auto& [b, m] : poles) {
                Exp xv = addExp(unitExp(A, victim), negExp(b.v));  // x/b
                MultiLaurent ser(A);
                for (int j = 1; j <= depth; ++j)
                    ser += MultiLaurent::mono(A, mulExp(xv, j), -b.c.pow(-j));
                for (int c = 0; c < m; ++c) res = clip(res * ser);
            }
            res = keepZero(res);
            if (!res.isZero()) out.push_back({std::move(res), rest});
        }
    }

    // Residues at the poles x = b.
    for (const auto& [b, m] : poles) {
        Jet jet(static_cast<std::size_t>(m));
        // numerator jet: num(b(1+t)) = sum_e g_e b^e (1+t)^e
        for (const auto& [e, g] : term.num.byVar(victim))
            for (int i = 0; i < m; ++i) {
                FElem c = binomFE(e, i);
                if (c.isZero()) continue;
                jet[static_cast<std::size_t>(i)].push_back({g * bPow(b, e) * c, {}});
            }
        // x^{M-1} at b(1+t)
        {
            Jet j2(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
                FElem c = binomFE(M - 1, i);
                if (c.isZero()) continue;
                j2[static_cast<std::size_t>(i)].push_back({bPow(b, M - 1) * c, {}});
            }
            jet = jetMul(jet, j2);
        }
        // (1 - a x)^{-1} at b(1+t): F sum_i t^i (ab)^i F^i, F = (1-ab)^{-1}
        for (const auto& f : P) {
            GeomFrac::Fac ab{f.c * b.c, addExp(addExp(f.v, negExp(unitExp(A, victim))), b.v), 1};
            Jet j2(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
                CTTerm t{MultiLaurent::mono(A, mulExp(ab.v, i), ab.c.pow(i)), {}};
                t.facs.assign(static_cast<std::size_t>(i + 1), ab);
                j2[static_cast<std::size_t>(i)].push_back(std::move(t));
            }
            jet = jetMul(jet, j2);
        }
        // (x - b')^{-m'} at b(1+t): b^{-m'} G^{m'} sum_i C(i+m'-1, m'-1) (-t)^i G^i,
        // G = (1 - b'/b)^{-1}
        for (const auto& [bp, mp] : poles) {
            if (bp.v == b.v && bp.c == b.c) continue;
            GeomFrac::Fac r{bp.c / b.c, addExp(bp.v, negExp(b.v)), 1};
            Jet j2(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i) {
                FElem c = binomFE(i + mp - 1, i) * FElem(i % 2 == 0 ? 1 : -1);
                CTTerm t{bPow(b, -mp) * c, {}};
                t.facs.assign(static_cast<std::size_t>(mp + i), r);
                j2[static_cast<std::size_t>(i)].push_back(std::move(t));
            }
            jet = jetMul(jet, j2);
        }
        for (auto& t : jet[static_cast<std::size_t>(m - 1)]) {
            t.num *= bPow(b, -(m - 1));
            if (t.num.isZero()) continue;
            t.facs.insert(t.facs.end(), rest.begin(), rest.end());
            out.push_back(std::move(t));
        }
    }
}

/// Equal-contour pairing of one (k, n) component pair: 1/k! times the
/// equal-radius constant term of
///   numR(z) numR'(1/z) prod_{i!=j} (1 - z_i/z_j)
///   / prod_{i!=j} (1 - q1 z_i/z_j)(1 - q2 z_i/z_j)(1 - p z_i/z_j),
/// then p -> q.  (The D_k and zeta q-binomials cancel exactly in this
/// combination.)  The p-substitution is performed on the combined rational
/// function after clearing removable (1 - c p^m) factors.
FElem pairCompEqual(const ShufForm& f, const ShufForm& fp) {
    int k = f.arity();
    if (k == 0) return f.num().evalAll({}) * fp.num().evalAll({});
    int A = k + 1, pVar = k;  // variable k plays the auxiliary symbol p
    RegionOrder ord = RegionOrder::equal(A, pVar);

    MultiLaurent fn = f.num().embed(A, 0), fpn = fp.num().invertVars().embed(A, 0);
    FElem scale = clearDens(fn) * clearDens(fpn);
    MultiLaurent num = fn * fpn;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            num *= MultiLaurent::one(A) - MultiLaurent::mono(A, ratioExp(A, i, j), FElem(1));
        }
    GeomFrac g(std::move(num));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            g.divideBinomial(ord, FElem(1), zeroExp(A), FElem::q1(), ratioExp(A, i, j));
            g.divideBinomial(ord, FElem(1), zeroExp(A), FElem::q2(), ratioExp(A, i, j));
            Exp pv = addExp(ratioExp(A, i, j), unitExp(A, pVar));
            g.divideBinomial(ord, FElem(1), zeroExp(A), FElem(1), pv);
        }

    std::vector<CTTerm> terms{{g.num(), {}}};
    for (const auto& fac : g.dens())
        for (int m = 0; m < fac.mult; ++m) terms[0].facs.push_back({fac.c, fac.v, 1});
    for (int victim = 0; victim < k; ++victim) {
        std::vector<CTTerm> next;
        for (auto& t : terms) ctVictim(std::move(t), victim, pVar, next);
        terms = std::move(next);
        mergeTerms(terms);
    }
    if (terms.empty()) return FElem(0);

    // Substitute p = q (1 + t) and expand each term as a Laurent series in t
    // up to order t^0.  A denominator factor (1 - c p^j) that vanishes at
    // p = q contributes one pole order in t; the summed series must be
    // regular, and the value at p = q is the t^0 coefficient of the sum.
    auto seriesMul = [](const std::vector<FElem>& a, const std::vector<FElem>& b,
                        std::size_t len) {
        std::vector<FElem> r(len, FElem(0));
        for (std::size_t i = 0; i < a.size() && i < len; ++i) {
            if (a[i].isZero()) continue;
            for (std::size_t j = 0; j < b.size() && i + j < len; ++j)
                r[i + j] += a[i] * b[j];
        }
        return r;
    };
    auto seriesInv = [](const std::vector<FElem>& a, std::size_t len) {
        std::vector<FElem> r(len, FElem(0));
        r[0] = a[0].inverse();
        for (std::size_t n = 1; n < len; ++n) {
            FElem s(0);
            for (std::size_t i = 1; i <= n && i < a.size(); ++i) s += a[i] * r[n - i];
            r[n] = -s * r[0];
        }
        return r;
    };
    const FElem q = FElem::qpow(1);
    int maxPole = 0;
    FElem polar(0);        // contribution of terms whose denominator vanishes
    std::vector<FElem> tails;  // t^{<0} coefficients of the sum, lowest first
    // Regular terms are summed over a factored common denominator so that no
    // gcd normalization ever sees a compound denominator.
    std::map<std::string, std::pair<FElem, int>> denFac;  // w -> (w, max count)
    std::vector<std::pair<FElem, std::map<std::string, int>>> plain;
    for (const auto& term : terms) {
        int pole = 0;  // pole order in t from vanishing factors
        std::vector<FElem> ws;
        ws.reserve(term.facs.size());
        for (const auto& fc : term.facs) {
            int j = fc.v[static_cast<std::size_t>(pVar)];
            ws.push_back(fc.c * q.pow(j));
            if ((FElem(1) - ws.back()).isZero()) ++pole;
        }
        if (pole == 0) {
            FElem n(0);
            for (const auto& [e, c] : term.num.terms())
                n += c * q.pow(e[static_cast<std::size_t>(pVar)]);
            std::map<std::string, int> cnt;
            for (const auto& w : ws) {
                std::string key = w.toString();
                int c = ++cnt[key];
                auto [it, fresh] = denFac.emplace(key, std::make_pair(w, c));
                if (!fresh) it->second.second = std::max(it->second.second, c);
            }
            plain.emplace_back(std::move(n), std::move(cnt));
            continue;
        }
        std::size_t len = static_cast<std::size_t>(pole) + 1;
        std::vector<FElem> ser(len, FElem(0));
        for (const auto& [e, c] : term.num.terms()) {
            int j = e[static_cast<std::size_t>(pVar)];
            FElem base = c * q.pow(j);  // c p^j at p = q (1 + t)
            for (std::size_t i = 0; i < len; ++i) ser[i] += base * binomFE(j, static_cast<int>(i));
        }
        for (std::size_t fi = 0; fi < term.facs.size(); ++fi) {
            int j = term.facs[fi].v[static_cast<std::size_t>(pVar)];
            const FElem& w = ws[fi];
            FElem head = FElem(1) - w;
            std::vector<FElem> f(len + 1, FElem(0));
            f[0] = head;
            for (std::size_t i = 1; i < len + 1; ++i) f[i] = -w * binomFE(j, static_cast<int>(i));
            if (head.isZero()) {
                // f = t * g with g(0) = -w j != 0: shift out the pole order
                f.erase(f.begin());
                if (f[0].isZero())
                    throw SubstitutionPole("pairEqualContour: higher-order vanishing at p = q");
            }
            ser = seriesMul(ser, seriesInv(f, len), len);
        }
        // ser[i] is the coefficient of t^{i - pole}
        polar += ser[static_cast<std::size_t>(pole)];
        if (pole > maxPole) {
            tails.insert(tails.begin(), static_cast<std::size_t>(pole - maxPole), FElem(0));
            maxPole = pole;
        }
        for (int i = 0; i < pole; ++i)
            tails[static_cast<std::size_t>(maxPole - pole + i)] += ser[static_cast<std::size_t>(i)];
    }
    for (const auto& c : tails)
        if (!c.isZero())
            throw SubstitutionPole("pairEqualContour: p -> q leaves an uncancelled pole");
    // Assemble the regular part: pad every term to the common denominator,
    // then cancel each binomial factor by exact division.
    FElem numSum(0);
    for (const auto& [n, cnt] : plain) {
        FElem pad = n;
        for (const auto& [key, wm] : denFac) {
            auto it = cnt.find(key);
            int have = it == cnt.end() ? 0 : it->second;
            for (int i = have; i < wm.second; ++i) pad *= FElem(1) - wm.first;
        }
        numSum += pad;
    }
    LaurentQ2 nn = numSum.num();
    LaurentQ2 nd = numSum.den();  // monomial
    FElem rest(1);
    for (const auto& [key, wm] : denFac) {
        FElem f = FElem(1) - wm.first;
        for (int i = 0; i < wm.second; ++i) {
            auto quot = (nn * f.den()).divExact(f.num());
            if (quot)
                nn = *quot;
            else
                rest *= f;
        }
    }
    FElem value = FElem(std::move(nn), std::move(nd)) / rest + polar;
    Int kfac;
    mpz_fac_ui(kfac.get_mpz_t(), static_cast<unsigned long>(k));
    return scale * value / FElem(LaurentQ2(kfac));
}

}  // namespace

FElem pairOrdered(const ShufElem& r, const ShufElem& rp) {
    ShufElem rd = withDual(rp);
    FElem total(0);
    for (const auto& [key, comp] : r.comps()) {
        auto it = rd.comps().find(key);
        if (it == rd.comps().end()) continue;
        if (key.first == 0)  // scalars pair as plain products
            total += comp.form.num().evalAll({}) * it->second.form.num().evalAll({});
        else
            total += pairCompOrdered(comp.form, *it->second.dual);
    }
    return total;
}

FElem pairEqualContour(const ShufElem& r, const ShufElem& rp) {
    FElem total(0);
    for (const auto& [key, comp] : r.comps()) {
        auto it = rp.comps().find(key);
        if (it == rp.comps().end()) continue;
        total += pairCompEqual(comp.form, it->second.form);
    }
    return total;
}

// ------------------------------------------------------------ decomposition

namespace {

/// Symbolic Newton data: P_s as a polynomial in commuting E_1..E_s, encoded
/// partition-of-s -> coefficient (same recurrence as newtonConvert).
using EPoly = std::map<std::vector<int>, FElem>;

const EPoly& pInE(int s) {
    static std::vector<EPoly> table;
    while (static_cast<int>(table.size()) < s) {
        int m = static_cast<int>(table.size()) + 1;
        EPoly cur;
        cur[{m}] = FElem(m % 2 == 0 ? -m : m);
        for (int j = 1; j < m; ++j) {
            FElem sg(j % 2 == 0 ? -1 : 1);
            for (const auto& [lam, c] : table[static_cast<std::size_t>(m - j - 1)]) {
                std::vector<int> mu = lam;
                mu.insert(std::upper_bound(mu.begin(), mu.end(), j), j);
                cur[mu] += sg * c;
            }
        }
        std::erase_if(cur, [](const auto& kv) { return kv.second.isZero(); });
        table.push_back(std::move(cur));
    }
    return table[static_cast<std::size_t>(s - 1)];
}

bool factorLess(const GenIndex& a, const GenIndex& b) {
    int c = cmpSlope(a, b);
    return c != 0 ? c < 0 : a.k < b.k;
}

/// Expand an ordered P-monomial over ordered E-monomials (exact change of
/// basis; equal-slope generators commute, so per-ray Newton expansions
/// combine multiplicatively).
std::map<SlopeMonomial, FElem> pMonoInE(const SlopeMonomial& m) {
    std::map<SlopeMonomial, FElem> acc{{SlopeMonomial{SlopeMonomial::Family::E, {}}, FElem(1)}};
    for (const auto& f : m.factors) {
        int g = std::gcd(f.k, std::abs(f.n));
        int k0 = f.k / g, n0 = f.n / g;
        std::map<SlopeMonomial, FElem> next;
        for (const auto& [word, c] : acc)
            for (const auto& [lam, cl] : pInE(g)) {
                SlopeMonomial w = word;
                for (int part : lam) w.factors.push_back({k0 * part, n0 * part});
                std::sort(w.factors.begin(), w.factors.end(), factorLess);
                next[w] += c * cl;
            }
        acc = std::move(next);
    }
    std::erase_if(acc, [](const auto& kv) { return kv.second.isZero(); });
    return acc;
}

FElem normOf(const SlopeMonomial& m) {
    static std::map<SlopeMonomial, FElem> cache;
    auto it = cache.find(m);
    if (it == cache.end()) {
        ShufElem e = monoElem(m);
        it = cache.emplace(m, pairOrdered(e, e)).first;
    }
    return it->second;
}

ShufElem eWordElem(const SlopeMonomial& w) {
    if (w.factors.empty()) return ShufElem::scalar(FElem(1));
    auto last = w.factors.size() - 1;
    ShufElem e = genEkn(w.factors[last].k, w.factors[last].n);
    for (std::size_t i = last; i-- > 0;) e = e * genEkn(w.factors[i].k, w.factors[i].n);
    return e;
}

std::optional<std::vector<std::pair<SlopeMonomial, FElem>>> tryDecompose(const ShufElem& r,
                                                                         const GenIndex& lo,
                                                                         const GenIndex& hi) {
    std::map<SlopeMonomial, FElem> acc;
    ShufElem recon;
    for (const auto& [key, comp] : r.comps()) {
        auto [k, n] = key;
        if (k == 0) {
            FElem c = comp.form.num().evalAll({});
            acc[SlopeMonomial{SlopeMonomial::Family::E, {}}] += c;
            recon += ShufElem::scalar(c);
            continue;
        }
        for (const auto& cand : enumerateOrdered(k, n, lo, hi, SlopeMonomial::Family::P)) {
            FElem nrm = normOf(cand);
            if (nrm.isZero())
                throw ReconstructionFailure("decomposeOrdered: zero norm for " + cand.label());
            FElem gamma = pairOrdered(r, monoElem(cand)) / nrm;
            if (gamma.isZero()) continue;
            for (const auto& [word, c] : pMonoInE(cand)) acc[word] += gamma * c;
        }
    }
    std::erase_if(acc, [](const auto& kv) { return kv.second.isZero(); });
    for (const auto& [word, c] : acc)
        if (!word.factors.empty()) recon += eWordElem(word) * c;
    if (!(recon == r)) return std::nullopt;
    return std::vector<std::pair<SlopeMonomial, FElem>>(acc.begin(), acc.end());
}

}  // namespace

std::vector<std::pair<SlopeMonomial, FElem>> decomposeOrdered(const ShufElem& r,
                                                              const GenIndex& lo,
                                                              const GenIndex& hi) {
    if (auto d = tryDecompose(r, lo, hi)) return *d;
    throw ReconstructionFailure("decomposeOrdered: reconstruction mismatch in the given window");
}

std::vector<std::pair<SlopeMonomial, FElem>> decomposeOrdered(const ShufElem& r) {
    int lo0 = 0, hi0 = 0;
    bool any = false;
    for (const auto& [key, comp] : r.comps()) {
        if (key.first == 0) continue;
        int f = floorDiv(key.second, key.first), c = ceilDiv(key.second, key.first);
        lo0 = any ? std::min(lo0, f) : f;
        hi0 = any ? std::max(hi0, c) : c;
        any = true;
    }
    for (int t = 1; t <= 4; ++t)
        if (auto d = tryDecompose(r, {1, lo0 - t}, {1, hi0 + t})) return *d;
    throw ReconstructionFailure("decomposeOrdered: reconstruction failed in all grown windows");
}

StructureTable structureConstants(int k, int n, int kp, int np) {
    GenIndex a{k, n}, b{kp, np};
    int c = cmpSlope(a, b);
    if (c < 0) throw std::invalid_argument("structureConstants: need n/k >= n'/k'");
    StructureTable table{a, b, {}, false};
    ShufElem comm = commutator(genEkn(kp, np), genEkn(k, n));
    if (c == 0) {
        table.verified = comm.isZero();
        return table;
    }
    table.verified = true;
    for (const auto& [mono, coeff] : decomposeOrdered(comm, b, a)) {
        bool inK = isInK(coeff / FElem::delta()).has_value();
        table.verified = table.verified && inK;
        table.entries.push_back({mono, coeff, inK});
    }
    return table;
}

}  // namespace shufkit
