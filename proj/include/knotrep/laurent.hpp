#pragma once

#include <string>
#include <vector>

#include "knotrep/rational.hpp"

namespace knotrep {

// Dense polynomial over Q, coefficient index = degree. Normal form has no
// trailing zeros; the zero polynomial is the empty vector.
using PolyQ = std::vector<Rational>;

void  poly_trim(PolyQ& p);
int   poly_deg(const PolyQ& p); // -1 for zero
PolyQ poly_add(const PolyQ& a, const PolyQ& b);
PolyQ poly_sub(const PolyQ& a, const PolyQ& b);
PolyQ poly_mul(const PolyQ& a, const PolyQ& b);
PolyQ poly_scale(const PolyQ& a, const Rational& c);
// division over Q[x]; b must be nonzero
void  poly_divmod(const PolyQ& a, const PolyQ& b, PolyQ& q, PolyQ& r);
PolyQ poly_derivative(const PolyQ& p);
PolyQ poly_monic(const PolyQ& p);
PolyQ poly_gcd_monic(PolyQ a, PolyQ b);
Rational poly_eval(const PolyQ& p, const Rational& x);
PolyQ poly_compose_x2(const PolyQ& p); // p(x^2)

// clears denominators and the integer content; keeps the sign of the leading
// coefficient positive
PolyQ poly_primitive(const PolyQ& p);

std::string poly_str(const PolyQ& p, const std::string& var = "x");
PolyQ parse_poly(const std::string& text, const std::string& var = "x");

// Laurent polynomial over Q: coeffs[i] is the coefficient of t^{low+i}.
// Leading and trailing coefficients are nonzero unless the polynomial is 0.
class LaurentPolynomial {
public:
    LaurentPolynomial() = default;
    LaurentPolynomial(long low, PolyQ coeffs) : low_(low), coeffs_(std::move(coeffs)) { normalize(); }
    explicit LaurentPolynomial(const Rational& c) : low_(0), coeffs_{c} { normalize(); }
    static LaurentPolynomial t_power(long e) { return LaurentPolynomial(e, {Rational(1)}); }

    bool is_zero() const noexcept { return coeffs_.empty(); }
    long lowest_exponent() const noexcept { return low_; }
    long highest_exponent() const noexcept { return low_ + static_cast<long>(coeffs_.size()) - 1; }
    const PolyQ& coefficients() const noexcept { return coeffs_; }
    Rational coefficient(long e) const {
        long i = e - low_;
        if (i < 0 || i >= static_cast<long>(coeffs_.size())) return Rational(0);
        return coeffs_[static_cast<size_t>(i)];
    }

    LaurentPolynomial operator+(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-(const LaurentPolynomial& o) const;
    LaurentPolynomial operator*(const LaurentPolynomial& o) const;
    LaurentPolynomial operator-() const;
    bool operator==(const LaurentPolynomial& o) const = default;

    LaurentPolynomial derivative() const; // d/dt
    LaurentPolynomial reciprocal() const; // t -> 1/t

    // evaluation at an invertible element of any commutative ring; Inv(x)
    // must return x^{-1}
    template <class S, class Inv>
    S evaluate(const S& x, Inv inv, const S& one) const {
        S acc = one;
        acc = acc - one; // zero
        if (coeffs_.empty()) return acc;
        S xp = one;
        if (low_ >= 0) {
            for (long i = 0; i < low_; ++i) xp = xp * x;
        } else {
            S xi = inv(x);
            for (long i = 0; i < -low_; ++i) xp = xp * xi;
        }
        for (size_t i = 0; i < coeffs_.size(); ++i) {
            acc = acc + xp * coeffs_[i];
            if (i + 1 < coeffs_.size()) xp = xp * x;
        }
        return acc;
    }

    Rational evaluate_rational(const Rational& x) const;

    // units-insensitive equality: equal up to +-t^k
    bool equals_up_to_unit(const LaurentPolynomial& o) const;

    // the underlying ordinary polynomial (shifted so the lowest exponent is 0)
    PolyQ shifted_poly() const { return coeffs_; }

    std::string str(const std::string& var = "t") const;

private:
    void normalize();

    long low_ = 0;
    PolyQ coeffs_;
};

LaurentPolynomial laurent_from_poly(const PolyQ& p);

// quotient a / b; throws if the division is inexact
LaurentPolynomial laurent_div_exact(const LaurentPolynomial& a, const LaurentPolynomial& b);

// gcd up to units, returned with primitive integer coefficients and positive
// leading coefficient
LaurentPolynomial laurent_gcd(const LaurentPolynomial& a, const LaurentPolynomial& b);

// {simple_part, multiple_part}: multiple_part = gcd(p, p'), simple_part = p / multiple_part
struct SquarefreeSplit {
    LaurentPolynomial simple_part;
    LaurentPolynomial multiple_part;
};
SquarefreeSplit squarefree_and_simple_roots(const LaurentPolynomial& p);

} // namespace knotrep
