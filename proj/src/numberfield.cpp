#include "knotrep/numberfield.hpp"

#include <algorithm>
#include <cmath>

#include "knotrep/polyfactor.hpp"
#include "knotrep/roots.hpp"

namespace knotrep {

FieldSpec::FieldSpec(PolyQ modulus, std::complex<double> embedding_hint)
    : modulus_(std::move(modulus)), hint_(embedding_hint) {
    if (poly_deg(modulus_) < 1) throw Error("invalid_argument", "field modulus must have degree >= 1");
    if (modulus_.back() != 1) modulus_ = poly_monic(modulus_);
    // snap the hint to the nearest root; it must be close and unambiguous
    auto roots = complex_roots(modulus_);
    double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
    std::complex<double> best{};
    for (auto& r : roots) {
        double d = std::abs(r - hint_);
        if (d < d1) {
            d2 = d1;
            d1 = d;
            best = r;
        } else if (d < d2) {
            d2 = d;
        }
    }
    if (!(d1 < 1e-2 * (1.0 + std::abs(hint_))) || (roots.size() > 1 && !(4 * d1 <= d2)))
        throw Error("invalid_argument", "embedding hint does not single out a root of the modulus");
    hint_ = best;
}

BigComplex FieldSpec::embedded_root() const {
    int prec = working_precision_bits();
    {
        std::lock_guard<std::mutex> lk(cache_mutex_);
        auto it = root_cache_.find(prec);
        if (it != root_cache_.end()) return it->second;
    }
    // Newton refinement from the double-precision root, with precision headroom
    PrecisionGuard guard(prec + 64);
    double dist = 0;
    std::complex<double> seed = closest_root(modulus_, hint_, &dist);
    BigComplex z(seed);
    PolyQ dm = poly_derivative(modulus_);
    auto eval = [](const PolyQ& p, const BigComplex& x) {
        BigComplex acc;
        for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + BigComplex(*it);
        return acc;
    };
    int iters = 2 + static_cast<int>(std::log2(static_cast<double>(prec)));
    for (int i = 0; i < iters + 4; ++i) {
        BigComplex f = eval(modulus_, z);
        BigComplex df = eval(dm, z);
        if (df.abs2() == 0) break;
        z = z - f / df;
    }
    set_working_precision(prec);
    BigComplex out(BigFloat(z.real()), BigFloat(z.imag()));
    std::lock_guard<std::mutex> lk(cache_mutex_);
    root_cache_[prec] = out;
    return out;
}

FieldPtr make_field(PolyQ modulus, std::complex<double> embedding_hint) {
    return std::make_shared<FieldSpec>(std::move(modulus), embedding_hint);
}

FieldElement::FieldElement(FieldPtr field, PolyQ rep) : field_(std::move(field)), rep_(std::move(rep)) {
    if (field_) {
        PolyQ q, r;
        if (poly_deg(rep_) >= field_->degree()) {
            poly_divmod(rep_, field_->modulus(), q, r);
            rep_ = std::move(r);
        }
    }
    poly_trim(rep_);
    if (!field_ && poly_deg(rep_) > 0)
        throw Error("invalid_argument", "non-constant element without a field");
}

FieldElement FieldElement::generator(const FieldPtr& field) {
    return FieldElement(field, PolyQ{Rational(0), Rational(1)});
}

FieldPtr FieldElement::unify(const FieldPtr& a, const FieldPtr& b) {
    if (!a) return b;
    if (!b) return a;
    if (a == b || a->modulus() == b->modulus()) return a;
    throw Error("backend_mismatch", "field elements from different number fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    return FieldElement(unify(field_, o.field_), poly_add(rep_, o.rep_));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    return FieldElement(unify(field_, o.field_), poly_sub(rep_, o.rep_));
}

FieldElement FieldElement::operator-() const {
    return FieldElement(field_, poly_scale(rep_, Rational(-1)));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    return FieldElement(unify(field_, o.field_), poly_mul(rep_, o.rep_));
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw Error("division_by_zero", "inverse of zero field element");
    if (!field_ || is_rational()) {
        FieldElement r(Rational(1) / rep_[0]);
        r.field_ = field_;
        return r;
    }
    // extended euclid: s*rep + t*m = gcd = const
    PolyQ r0 = field_->modulus(), r1 = rep_;
    PolyQ t0{}, t1{Rational(1)};
    while (poly_deg(r1) > 0) {
        PolyQ q, r;
        poly_divmod(r0, r1, q, r);
        PolyQ tn = poly_sub(t0, poly_mul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(tn);
    }
    if (r1.empty()) throw Error("invalid_argument", "modulus is not irreducible (zero divisor found)");
    return FieldElement(field_, poly_scale(t1, Rational(1) / r1[0]));
}

FieldElement FieldElement::pow(long e) const {
    if (e == 0) return FieldElement(field_, PolyQ{Rational(1)});
    if (e < 0) return inverse().pow(-e);
    FieldElement acc(field_, PolyQ{Rational(1)});
    FieldElement base = *this;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

BigComplex FieldElement::embed() const {
    if (!field_ || is_rational()) return BigComplex(rep_.empty() ? Rational(0) : rep_[0]);
    BigComplex x = field_->embedded_root();
    BigComplex acc;
    for (auto it = rep_.rbegin(); it != rep_.rend(); ++it) acc = acc * x + BigComplex(*it);
    return acc;
}

std::string FieldElement::str() const {
    if (rep_.empty()) return "0";
    return poly_str(rep_);
}

FieldElement evaluate_laurent(const LaurentPolynomial& p, const FieldElement& x) {
    return p.evaluate(
        x, [](const FieldElement& v) { return v.inverse(); },
        FieldElement(x.field(), PolyQ{Rational(1)}));
}

BigComplex evaluate_laurent(const LaurentPolynomial& p, const BigComplex& x) {
    return p.evaluate(
        x, [](const BigComplex& v) { return BigComplex(1) / v; }, BigComplex(1));
}

LambdaField make_lambda_field(const LaurentPolynomial& delta, std::complex<double> root_selector) {
    if (delta.is_zero()) throw Error("invalid_argument", "zero Alexander polynomial");
    PolyQ base = poly_primitive(delta.shifted_poly());
    if (poly_deg(base) < 1)
        throw Error("no_root", "constant polynomial has no usable root");
    // locate mu among the roots; the selector has to single one out
    auto roots = complex_roots(base);
    double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
    std::complex<double> mu{};
    for (auto& r : roots) {
        double d = std::abs(r - root_selector);
        if (d < d1) {
            d2 = d1;
            d1 = d;
            mu = r;
        } else if (d < d2) {
            d2 = d;
        }
    }
    if (!(d1 < 1e-2 * (1.0 + std::abs(root_selector))) || (roots.size() > 1 && !(4 * d1 <= d2)))
        throw Error("no_root", "selector is not near any root of the polynomial");
    if (std::abs(mu - 1.0) < 1e-9)
        throw Error("no_root", "t = 1 is never a usable root for a knot polynomial");
    // irreducible factor of delta with root mu
    PolyQ p_mu;
    for (const auto& f : factor_rational(base)) {
        double d = 0;
        closest_root(f.factor, mu, &d);
        if (d < 1e-6) {
            p_mu = f.factor;
            break;
        }
    }
    if (p_mu.empty()) throw Error("no_root", "could not attribute the root to an irreducible factor");
    // q(x) = p_mu(x^2); pick the factor with a root lambda, lambda^2 ~ mu
    PolyQ q = poly_compose_x2(p_mu);
    std::complex<double> lam = std::sqrt(mu);
    // deterministic sign: larger real part, ties by larger imaginary part
    std::complex<double> lam2 = -lam;
    if (lam2.real() > lam.real() + 1e-15 ||
        (std::abs(lam2.real() - lam.real()) <= 1e-15 && lam2.imag() > lam.imag()))
        std::swap(lam, lam2);
    for (const auto& f : factor_rational(q)) {
        for (auto cand : {lam, lam2}) {
            double d = 0;
            std::complex<double> root = closest_root(f.factor, cand, &d);
            if (d < 1e-6 * (1.0 + std::abs(cand))) {
                FieldPtr K = make_field(poly_monic(f.factor), root);
                return {K, FieldElement::generator(K)};
            }
        }
    }
    throw Error("no_root", "no factor of p(x^2) has a root squaring to the selector");
}

} // namespace knotrep
