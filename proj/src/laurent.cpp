#include "knotrep/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace knotrep {

void poly_trim(PolyQ& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int poly_deg(const PolyQ& p) { return static_cast<int>(p.size()) - 1; }

PolyQ poly_add(const PolyQ& a, const PolyQ& b) {
    PolyQ r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    poly_trim(r);
    return r;
}

PolyQ poly_sub(const PolyQ& a, const PolyQ& b) {
    PolyQ r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    poly_trim(r);
    return r;
}

PolyQ poly_mul(const PolyQ& a, const PolyQ& b) {
    if (a.empty() || b.empty()) return {};
    PolyQ r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly_trim(r);
    return r;
}

PolyQ poly_scale(const PolyQ& a, const Rational& c) {
    if (c == 0) return {};
    PolyQ r = a;
    for (auto& x : r) x *= c;
    return r;
}

void poly_divmod(const PolyQ& a, const PolyQ& b, PolyQ& q, PolyQ& r) {
    if (b.empty()) throw Error("division_by_zero", "polynomial division by zero");
    r = a;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
    const Rational& lc = b.back();
    while (r.size() >= b.size()) {
        Rational c = r.back() / lc;
        size_t shift = r.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
        poly_trim(r);
        if (r.empty()) break;
        if (r.size() >= b.size() && r.back() == 0) poly_trim(r);
    }
    poly_trim(q);
}

PolyQ poly_derivative(const PolyQ& p) {
    if (p.size() <= 1) return {};
    PolyQ r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rational(static_cast<long>(i));
    poly_trim(r);
    return r;
}

PolyQ poly_monic(const PolyQ& p) {
    if (p.empty()) return p;
    return poly_scale(p, Rational(1) / p.back());
}

PolyQ poly_gcd_monic(PolyQ a, PolyQ b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        PolyQ q, r;
        poly_divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

Rational poly_eval(const PolyQ& p, const Rational& x) {
    Rational acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

PolyQ poly_compose_x2(const PolyQ& p) {
    if (p.empty()) return {};
    PolyQ r(2 * p.size() - 1, Rational(0));
    for (size_t i = 0; i < p.size(); ++i) r[2 * i] = p[i];
    return r;
}

PolyQ poly_primitive(const PolyQ& p) {
    if (p.empty()) return p;
    Integer den(1);
    for (auto& c : p) den = lcm(den, c.get_den());
    Integer num(0);
    for (auto& c : p) {
        Rational scaled = c * Rational(den); // integral by construction
        num = gcd(num, scaled.get_num());
    }
    if (num == 0) num = 1;
    Rational scale = Rational(den) / Rational(num);
    PolyQ r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = p[i] * scale;
    if (!r.empty() && r.back() < 0)
        for (auto& c : r) c = -c;
    return r;
}

std::string poly_str(const PolyQ& p, const std::string& var) {
    if (p.empty()) return "0";
    std::string out;
    for (int i = poly_deg(p); i >= 0; --i) {
        const Rational& c = p[static_cast<size_t>(i)];
        if (c == 0) continue;
        if (!out.empty()) out += c > 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        Rational a = abs(c);
        bool unit = a == 1;
        if (!unit || i == 0) out += a.get_str();
        if (i > 0) {
            if (!unit) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

// grammar: terms of [+-] [coeff] [*] [var [^int]]; coeff integer or p/q
PolyQ parse_poly(const std::string& text, const std::string& var) {
    PolyQ out;
    size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto fail = [&](const std::string& what) {
        throw Error("parse_error", "polynomial parse error at position " + std::to_string(i) + ": " + what);
    };
    skip_ws();
    if (i == text.size()) fail("empty polynomial");
    bool first = true;
    while (true) {
        skip_ws();
        if (i == text.size()) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        skip_ws();
        Rational coeff(1);
        bool have_coeff = false;
        if (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])))) {
            size_t j = i;
            while (j < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/' || text[j] == '.'))
                ++j;
            coeff = parse_rational(text.substr(i, j - i));
            i = j;
            have_coeff = true;
        }
        skip_ws();
        if (i < text.size() && text[i] == '*') {
            ++i;
            skip_ws();
        }
        long deg = 0;
        if (i + var.size() <= text.size() && text.compare(i, var.size(), var) == 0) {
            i += var.size();
            deg = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                size_t j = i;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                if (j == i) fail("expected exponent");
                deg = std::stol(text.substr(i, j - i));
                i = j;
            }
        } else if (!have_coeff) {
            fail("expected coefficient or '" + var + "'");
        }
        if (static_cast<size_t>(deg) >= out.size()) out.resize(static_cast<size_t>(deg) + 1, Rational(0));
        out[static_cast<size_t>(deg)] += sign * coeff;
        first = false;
    }
    poly_trim(out);
    return out;
}

void LaurentPolynomial::normalize() {
    poly_trim(coeffs_);
    size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        low_ = 0;
        return;
    }
    if (lead) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
        low_ += static_cast<long>(lead);
    }
}

LaurentPolynomial LaurentPolynomial::operator+(const LaurentPolynomial& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    long low = std::min(low_, o.low_);
    long high = std::max(highest_exponent(), o.highest_exponent());
    PolyQ c(static_cast<size_t>(high - low + 1), Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) c[static_cast<size_t>(low_ - low) + i] += coeffs_[i];
    for (size_t i = 0; i < o.coeffs_.size(); ++i) c[static_cast<size_t>(o.low_ - low) + i] += o.coeffs_[i];
    return LaurentPolynomial(low, std::move(c));
}

LaurentPolynomial LaurentPolynomial::operator-() const {
    LaurentPolynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

LaurentPolynomial LaurentPolynomial::operator-(const LaurentPolynomial& o) const { return *this + (-o); }

LaurentPolynomial LaurentPolynomial::operator*(const LaurentPolynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    return LaurentPolynomial(low_ + o.low_, poly_mul(coeffs_, o.coeffs_));
}

LaurentPolynomial LaurentPolynomial::derivative() const {
    if (is_zero()) return {};
    PolyQ c(coeffs_.size(), Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        long e = low_ + static_cast<long>(i);
        c[i] = coeffs_[i] * Rational(e);
    }
    return LaurentPolynomial(low_ - 1, std::move(c));
}

LaurentPolynomial LaurentPolynomial::reciprocal() const {
    if (is_zero()) return {};
    PolyQ c(coeffs_.rbegin(), coeffs_.rend());
    return LaurentPolynomial(-highest_exponent(), std::move(c));
}

Rational LaurentPolynomial::evaluate_rational(const Rational& x) const {
    if (is_zero()) return Rational(0);
    if (x == 0) throw Error("division_by_zero", "Laurent polynomial at 0");
    return rat_pow(x, low_) * poly_eval(coeffs_, x);
}

bool LaurentPolynomial::equals_up_to_unit(const LaurentPolynomial& o) const {
    if (is_zero() || o.is_zero()) return is_zero() == o.is_zero();
    if (coeffs_.size() != o.coeffs_.size()) return false;
    // c * coeffs == o.coeffs for a single rational c
    Rational c = o.coeffs_[0] / coeffs_[0];
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] * c != o.coeffs_[i]) return false;
    return true;
}

std::string LaurentPolynomial::str(const std::string& var) const {
    if (is_zero()) return "0";
    if (low_ == 0) return poly_str(coeffs_, var);
    return var + "^" + std::to_string(low_) + " * (" + poly_str(coeffs_, var) + ")";
}

LaurentPolynomial laurent_from_poly(const PolyQ& p) { return LaurentPolynomial(0, p); }

LaurentPolynomial laurent_div_exact(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (b.is_zero()) throw Error("division_by_zero", "Laurent division by zero");
    if (a.is_zero()) return {};
    PolyQ q, r;
    poly_divmod(a.shifted_poly(), b.shifted_poly(), q, r);
    if (!r.empty()) throw Error("invalid_argument", "inexact Laurent division");
    return LaurentPolynomial(a.lowest_exponent() - b.lowest_exponent(), std::move(q));
}

LaurentPolynomial laurent_gcd(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    PolyQ g = poly_gcd_monic(a.shifted_poly(), b.shifted_poly());
    return LaurentPolynomial(0, poly_primitive(g));
}

SquarefreeSplit squarefree_and_simple_roots(const LaurentPolynomial& p) {
    if (p.is_zero()) throw Error("invalid_argument", "squarefree split of zero polynomial");
    PolyQ q = p.shifted_poly();
    PolyQ g = poly_gcd_monic(q, poly_derivative(q));
    PolyQ simple, rem;
    poly_divmod(q, g, simple, rem);
    // q = simple * g exactly
    return {LaurentPolynomial(0, poly_primitive(simple)), LaurentPolynomial(0, poly_primitive(g))};
}

} // namespace knotrep
