#include "knotrep/polyfactor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

namespace knotrep {
namespace {

// ---- arithmetic in F_p[x], p an odd prime < 2^31, coefficient = uint64 ----

using PolyP = std::vector<uint64_t>;

void ptrim(PolyP& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP pmul(const PolyP& a, const PolyP& b, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    ptrim(r);
    return r;
}

uint64_t inv_mod(uint64_t a, uint64_t p) {
    int64_t t = 0, newt = 1;
    int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a % p);
    while (newr) {
        int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(p) : t);
}

void pdivmod(const PolyP& a, const PolyP& b, PolyP& q, PolyP& r, uint64_t p) {
    r = a;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    uint64_t il = inv_mod(b.back(), p);
    while (r.size() >= b.size()) {
        uint64_t c = r.back() * il % p;
        size_t shift = r.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) r[shift + i] = (r[shift + i] + p * c - c * b[i] % p) % p;
        ptrim(r);
        if (r.size() >= b.size() && !r.empty() && r.back() == 0) ptrim(r);
        if (r.size() < b.size()) break;
    }
    ptrim(q);
}

PolyP pmod(const PolyP& a, const PolyP& m, uint64_t p) {
    if (a.size() < m.size()) return a;
    PolyP q, r;
    pdivmod(a, m, q, r, p);
    return r;
}

PolyP pgcd(PolyP a, PolyP b, uint64_t p) {
    ptrim(a);
    ptrim(b);
    while (!b.empty()) {
        PolyP r = pmod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        uint64_t il = inv_mod(a.back(), p);
        for (auto& c : a) c = c * il % p;
    }
    return a;
}

PolyP ppowmod(PolyP base, Integer e, const PolyP& m, uint64_t p) {
    PolyP acc{1};
    base = pmod(base, m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = pmod(pmul(acc, base, p), m, p);
        base = pmod(pmul(base, base, p), m, p);
        e >>= 1;
    }
    return acc;
}

PolyP pderiv(const PolyP& a, uint64_t p) {
    if (a.size() <= 1) return {};
    PolyP r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * (i % p) % p;
    ptrim(r);
    return r;
}

// Cantor-Zassenhaus: factor a monic squarefree polynomial over F_p
void cz_factor(const PolyP& f, uint64_t p, std::mt19937_64& rng, std::vector<PolyP>& out) {
    if (f.size() <= 1) return;
    if (f.size() == 2) {
        out.push_back(f);
        return;
    }
    size_t n = f.size() - 1;
    // distinct-degree
    PolyP x{0, 1};
    PolyP h = x;
    PolyP rest = f;
    std::vector<std::pair<PolyP, size_t>> dd; // (product of degree-d factors, d)
    for (size_t d = 1; 2 * d <= n && rest.size() > 1; ++d) {
        h = ppowmod(h, Integer(static_cast<unsigned long>(p)), rest, p);
        PolyP hx = h;
        if (hx.size() < 2) hx.resize(2, 0);
        hx[1] = (hx[1] + p - 1) % p; // h - x
        ptrim(hx);
        PolyP g = pgcd(rest, hx, p);
        if (g.size() > 1) {
            dd.emplace_back(g, d);
            PolyP q, r;
            pdivmod(rest, g, q, r, p);
            rest = q;
            h = pmod(h, rest, p);
        }
        n = rest.empty() ? 0 : rest.size() - 1;
    }
    if (rest.size() > 1) dd.emplace_back(rest, rest.size() - 1);
    // equal-degree splitting
    for (auto& [prod, d] : dd) {
        std::vector<PolyP> work{prod};
        std::vector<PolyP> done;
        Integer exp;
        mpz_ui_pow_ui(exp.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
        exp = (exp - 1) / 2;
        while (!work.empty()) {
            PolyP g = work.back();
            work.pop_back();
            if (g.size() - 1 == d) {
                done.push_back(g);
                continue;
            }
            // random splitting attempt
            PolyP a(g.size() - 1);
            for (auto& c : a) c = rng() % p;
            ptrim(a);
            if (a.empty()) continue;
            PolyP b = ppowmod(a, exp, g, p);
            if (b.empty()) {
                work.push_back(g);
                continue;
            }
            b[0] = (b[0] + p - 1) % p; // b - 1
            ptrim(b);
            PolyP u = pgcd(g, b, p);
            if (u.size() <= 1 || u.size() == g.size()) {
                work.push_back(g);
                continue;
            }
            PolyP q, r;
            pdivmod(g, u, q, r, p);
            work.push_back(u);
            work.push_back(q);
        }
        for (auto& g : done) out.push_back(g);
    }
}

// ---- integer polynomial helpers (mpz coefficients) ----

using PolyZ = std::vector<Integer>;

void ztrim(PolyZ& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyZ zmul(const PolyZ& a, const PolyZ& b) {
    if (a.empty() || b.empty()) return {};
    PolyZ r(a.size() + b.size() - 1, Integer(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    ztrim(r);
    return r;
}

Integer zmax_abs(const PolyZ& a) {
    Integer m(0);
    for (auto& c : a) {
        Integer v = abs(c);
        if (v > m) m = v;
    }
    return m;
}

Integer centered(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    if (2 * r > m) r -= m;
    return r;
}

void zmod_center(PolyZ& a, const Integer& m) {
    for (auto& c : a) c = centered(c, m);
    ztrim(a);
}

// lift a factorization f = g*h (mod m) to mod m^2; f, g, h monic.
// s*g + t*h = 1 (mod m) is maintained alongside.
struct LiftPair {
    PolyZ g, h, s, t;
};

PolyZ zmul_mod(const PolyZ& a, const PolyZ& b, const Integer& m) {
    PolyZ r = zmul(a, b);
    zmod_center(r, m);
    return r;
}

// division of a by monic b over Z/m (exactness not required; returns q, r)
void zdivmod_monic(const PolyZ& a, const PolyZ& b, PolyZ& q, PolyZ& r, const Integer& m) {
    r = a;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Integer(0));
    while (r.size() >= b.size()) {
        Integer c = r.back();
        size_t shift = r.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) r[shift + i] = centered(r[shift + i] - c * b[i], m);
        ztrim(r);
    }
    zmod_center(q, m);
    zmod_center(r, m);
}

void hensel_step(const PolyZ& f, LiftPair& lp, const Integer& m) {
    // Algorithm 15.10 of von zur Gathen-Gerhard, monic case
    Integer m2 = m * m;
    PolyZ e = f;
    {
        PolyZ gh = zmul(lp.g, lp.h);
        PolyZ tmp(std::max(e.size(), gh.size()), Integer(0));
        for (size_t i = 0; i < e.size(); ++i) tmp[i] += e[i];
        for (size_t i = 0; i < gh.size(); ++i) tmp[i] -= gh[i];
        e = tmp;
        zmod_center(e, m2);
    }
    PolyZ se = zmul_mod(lp.s, e, m2);
    PolyZ q, r;
    zdivmod_monic(se, lp.h, q, r, m2);
    PolyZ gnew = lp.g;
    {
        PolyZ te = zmul_mod(lp.t, e, m2);
        PolyZ gq = zmul_mod(lp.g, q, m2);
        PolyZ tmp(std::max({gnew.size(), te.size(), gq.size()}), Integer(0));
        for (size_t i = 0; i < gnew.size(); ++i) tmp[i] += gnew[i];
        for (size_t i = 0; i < te.size(); ++i) tmp[i] += te[i];
        for (size_t i = 0; i < gq.size(); ++i) tmp[i] += gq[i];
        gnew = tmp;
        zmod_center(gnew, m2);
    }
    PolyZ hnew = lp.h;
    for (size_t i = 0; i < r.size(); ++i) {
        if (i >= hnew.size()) hnew.resize(i + 1, Integer(0));
        hnew[i] += r[i];
    }
    zmod_center(hnew, m2);
    // update Bezout: b = s*gnew + t*hnew - 1 mod m^2
    PolyZ b = zmul_mod(lp.s, gnew, m2);
    {
        PolyZ th = zmul_mod(lp.t, hnew, m2);
        PolyZ tmp(std::max(b.size(), th.size()), Integer(0));
        for (size_t i = 0; i < b.size(); ++i) tmp[i] += b[i];
        for (size_t i = 0; i < th.size(); ++i) tmp[i] += th[i];
        if (tmp.empty()) tmp.resize(1, Integer(0));
        tmp[0] -= 1;
        b = tmp;
        zmod_center(b, m2);
    }
    PolyZ sb = zmul_mod(lp.s, b, m2);
    PolyZ qq, rr;
    zdivmod_monic(sb, hnew, qq, rr, m2);
    PolyZ snew(std::max(lp.s.size(), rr.size()), Integer(0));
    for (size_t i = 0; i < lp.s.size(); ++i) snew[i] += lp.s[i];
    for (size_t i = 0; i < rr.size(); ++i) snew[i] -= rr[i];
    zmod_center(snew, m2);
    PolyZ tnew;
    {
        PolyZ tb = zmul_mod(lp.t, b, m2);
        PolyZ gq = zmul_mod(gnew, qq, m2);
        PolyZ tmp(std::max({lp.t.size(), tb.size(), gq.size()}), Integer(0));
        for (size_t i = 0; i < lp.t.size(); ++i) tmp[i] += lp.t[i];
        for (size_t i = 0; i < tb.size(); ++i) tmp[i] -= tb[i];
        for (size_t i = 0; i < gq.size(); ++i) tmp[i] -= gq[i];
        for (auto& c : tmp) c = centered(c, m2);
        tnew = tmp;
        ztrim(tnew);
    }
    lp = {gnew, hnew, snew, tnew};
}

// extended euclid over F_p: s*a + t*b = 1 for coprime monic a, b
void bezout_fp(const PolyP& a, const PolyP& b, PolyP& s, PolyP& t, uint64_t p) {
    PolyP r0 = a, r1 = b;
    PolyP s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        PolyP q, r;
        pdivmod(r0, r1, q, r, p);
        r0 = std::move(r1);
        r1 = std::move(r);
        PolyP qs = pmul(q, s1, p), qt = pmul(q, t1, p);
        PolyP ns(std::max(s0.size(), qs.size()), 0), nt(std::max(t0.size(), qt.size()), 0);
        for (size_t i = 0; i < s0.size(); ++i) ns[i] = s0[i];
        for (size_t i = 0; i < qs.size(); ++i) ns[i] = (ns[i] + p - qs[i]) % p;
        for (size_t i = 0; i < t0.size(); ++i) nt[i] = t0[i];
        for (size_t i = 0; i < qt.size(); ++i) nt[i] = (nt[i] + p - qt[i]) % p;
        ptrim(ns);
        ptrim(nt);
        s0 = std::move(s1);
        s1 = std::move(ns);
        t0 = std::move(t1);
        t1 = std::move(nt);
    }
    // r0 = gcd (a unit); scale
    uint64_t il = inv_mod(r0.empty() ? 1 : r0[0], p);
    for (auto& c : s0) c = c * il % p;
    for (auto& c : t0) c = c * il % p;
    s = s0;
    t = t0;
}

// recursive multifactor lift of monic f = prod(factors) from mod p to mod >= bound
std::vector<PolyZ> multifactor_lift(const PolyZ& f, std::vector<PolyP> factors, uint64_t p,
                                    const Integer& bound) {
    if (factors.size() == 1) {
        PolyZ g = f;
        return {g};
    }
    size_t half = factors.size() / 2;
    std::vector<PolyP> left(factors.begin(), factors.begin() + static_cast<long>(half));
    std::vector<PolyP> right(factors.begin() + static_cast<long>(half), factors.end());
    PolyP gl{1}, gr{1};
    for (auto& x : left) gl = pmul(gl, x, p);
    for (auto& x : right) gr = pmul(gr, x, p);
    PolyP s, t;
    bezout_fp(gl, gr, s, t, p);
    LiftPair lp;
    auto to_z = [&](const PolyP& a) {
        PolyZ r(a.size());
        for (size_t i = 0; i < a.size(); ++i) r[i] = centered(Integer(static_cast<unsigned long>(a[i])), Integer(static_cast<unsigned long>(p)));
        return r;
    };
    lp.g = to_z(gl);
    lp.h = to_z(gr);
    lp.s = to_z(s);
    lp.t = to_z(t);
    Integer m(static_cast<unsigned long>(p));
    while (m < bound) {
        hensel_step(f, lp, m);
        m *= m;
    }
    std::vector<PolyZ> out = multifactor_lift(lp.g, left, p, bound);
    std::vector<PolyZ> out2 = multifactor_lift(lp.h, right, p, bound);
    // lifted sub-products are already reduced mod >= bound
    out.insert(out.end(), out2.begin(), out2.end());
    return out;
}

PolyZ to_integer_poly(const PolyQ& p) {
    PolyQ prim = poly_primitive(p);
    PolyZ r(prim.size());
    for (size_t i = 0; i < prim.size(); ++i) r[i] = prim[i].get_num();
    return r;
}

PolyQ to_rational_poly(const PolyZ& p) {
    PolyQ r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = Rational(p[i]);
    return r;
}

// factor a primitive squarefree integer polynomial, deg >= 1
std::vector<PolyQ> factor_squarefree(const PolyZ& f0) {
    if (f0.size() == 2) return {poly_primitive(to_rational_poly(f0))};
    // monicize: F(x) = lc^{deg-1} f(x/lc), so F[j] = f0[j] * lc^{d-1-j}
    Integer lc = f0.back();
    size_t d = f0.size() - 1;
    PolyZ F(f0.size());
    F[d] = 1;
    Integer pw(1);
    for (size_t k = 1; k <= d; ++k) {
        F[d - k] = f0[d - k] * pw;
        pw *= lc;
    }
    // choose prime: F mod p squarefree, p odd, not dividing lc(F)=1... lc(F)=1 by construction
    static const uint64_t primes[] = {3,    5,    7,    11,   13,   17,   19,   23,  29,  31,
                                      37,   41,   43,   47,   53,   59,   61,   67,  71,  73,
                                      79,   83,   89,   97,   101,  103,  107,  109, 113, 127,
                                      131,  137,  139,  149,  151,  157,  163,  167, 173, 179,
                                      15013, 15017, 15031, 15053, 15061, 15073, 15077};
    std::mt19937_64 rng(0xfeedbeef);
    for (uint64_t p : primes) {
        PolyP fp(F.size());
        for (size_t i = 0; i < F.size(); ++i) {
            Integer c = F[i] % Integer(static_cast<unsigned long>(p));
            if (c < 0) c += static_cast<unsigned long>(p);
            fp[i] = c.get_ui();
        }
        ptrim(fp);
        if (fp.size() != F.size()) continue; // p divides leading coeff (cannot happen, monic)
        if (pgcd(fp, pderiv(fp, p), p).size() > 1) continue; // not squarefree mod p
        std::vector<PolyP> modular;
        cz_factor(fp, p, rng, modular);
        if (modular.size() == 1) {
            return {poly_primitive(to_rational_poly(f0))};
        }
        // Mignotte-style bound for monic factors of F, then lift
        Integer bound = (zmax_abs(F) + 1) * Integer(static_cast<unsigned long>(d + 1));
        bound <<= (d + 4);
        std::sort(modular.begin(), modular.end(),
                  [](const PolyP& a, const PolyP& b) { return a.size() < b.size(); });
        Integer modulus(static_cast<unsigned long>(p));
        while (modulus < bound) modulus *= modulus;
        std::vector<PolyZ> lifted = multifactor_lift(F, modular, p, bound);
        // subset recombination: map back via g(x) -> primitive(g(lc*x))
        std::vector<PolyQ> out;
        std::vector<size_t> alive(lifted.size());
        for (size_t i = 0; i < alive.size(); ++i) alive[i] = i;
        PolyQ remaining = to_rational_poly(f0);
        size_t take = 1;
        while (take <= alive.size()) {
            bool found = false;
            std::vector<size_t> idx(take);
            // iterate over subsets of size `take`
            std::vector<size_t> comb(take);
            for (size_t i = 0; i < take; ++i) comb[i] = i;
            while (true) {
                PolyZ prod{1};
                for (size_t i : comb) prod = zmul(prod, lifted[alive[i]]);
                zmod_center(prod, modulus);
                // map back to a candidate factor of f0
                PolyQ cand(prod.size());
                Rational lpow(1);
                for (size_t i = 0; i < prod.size(); ++i) {
                    cand[i] = Rational(prod[i]) * lpow;
                    lpow *= Rational(lc);
                }
                cand = poly_primitive(cand);
                PolyQ q, r;
                poly_divmod(remaining, cand, q, r);
                if (r.empty() && !q.empty()) {
                    out.push_back(cand);
                    remaining = poly_primitive(q);
                    std::vector<size_t> na;
                    for (size_t i = 0; i < alive.size(); ++i)
                        if (std::find(comb.begin(), comb.end(), i) == comb.end()) na.push_back(alive[i]);
                    alive = na;
                    found = true;
                    break;
                }
                // next combination
                long pos = static_cast<long>(take) - 1;
                while (pos >= 0 && comb[static_cast<size_t>(pos)] == alive.size() - take + static_cast<size_t>(pos)) --pos;
                if (pos < 0) break;
                ++comb[static_cast<size_t>(pos)];
                for (size_t i = static_cast<size_t>(pos) + 1; i < take; ++i) comb[i] = comb[i - 1] + 1;
            }
            if (!found) ++take;
            if (poly_deg(remaining) <= 0) break;
        }
        if (poly_deg(remaining) > 0) out.push_back(poly_primitive(remaining));
        return out;
    }
    throw Error("factorization_failure", "no usable prime found for Zassenhaus");
}

} // namespace

std::vector<PolyFactor> factor_rational(const PolyQ& p, int degree_cap) {
    if (p.empty()) throw Error("invalid_argument", "cannot factor the zero polynomial");
    if (poly_deg(p) > degree_cap)
        throw Error("factorization_failure",
                    "degree " + std::to_string(poly_deg(p)) + " exceeds cap " + std::to_string(degree_cap));
    std::vector<PolyFactor> out;
    if (poly_deg(p) == 0) return out;
    // squarefree decomposition by repeated gcd
    PolyQ work = poly_primitive(p);
    int mult = 1;
    while (poly_deg(work) > 0) {
        PolyQ g = poly_gcd_monic(work, poly_derivative(work));
        PolyQ sf, rem;
        poly_divmod(work, g, sf, rem); // squarefree part at this multiplicity level
        sf = poly_primitive(sf);
        if (poly_deg(sf) > 0) {
            for (const PolyQ& f : factor_squarefree(to_integer_poly(sf))) {
                // factors of sf appear with multiplicity >= mult; count exactly below
                bool merged = false;
                for (auto& pf : out)
                    if (pf.factor == f) {
                        pf.multiplicity += 0;
                        merged = true;
                    }
                if (!merged) out.push_back({f, 0});
            }
        }
        work = poly_primitive(g);
        ++mult;
        if (mult > degree_cap + 1) break;
    }
    // exact multiplicities by trial division
    PolyQ rem = poly_primitive(p);
    for (auto& pf : out) {
        while (true) {
            PolyQ q, r;
            poly_divmod(rem, pf.factor, q, r);
            if (!r.empty() || q.empty()) break;
            rem = q;
            ++pf.multiplicity;
        }
    }
    return out;
}

bool poly_is_irreducible(const PolyQ& p) {
    if (poly_deg(p) <= 0) return false;
    if (poly_deg(p) == 1) return true;
    auto f = factor_rational(p);
    return f.size() == 1 && f[0].multiplicity == 1;
}

} // namespace knotrep
