#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "knotrep/bigcomplex.hpp"
#include "knotrep/laurent.hpp"

namespace knotrep {

// Q[x]/(m(x)) with m monic irreducible over Q. The embedding hint picks which
// complex root of m the residue class of x denotes.
class FieldSpec {
public:
    FieldSpec(PolyQ modulus, std::complex<double> embedding_hint);

    const PolyQ& modulus() const noexcept { return modulus_; }
    int degree() const noexcept { return poly_deg(modulus_); }
    std::complex<double> embedding_hint() const noexcept { return hint_; }
    std::string str() const { return poly_str(modulus_); }

    // the designated root of m, refined to the current working precision
    BigComplex embedded_root() const;

private:
    PolyQ modulus_; // monic
    std::complex<double> hint_;
    mutable std::mutex cache_mutex_;
    mutable std::map<int, BigComplex> root_cache_; // precision bits -> refined root
};

using FieldPtr = std::shared_ptr<const FieldSpec>;

FieldPtr make_field(PolyQ modulus, std::complex<double> embedding_hint);

// Element of Q[x]/(m). A null field means a plain rational constant; binary
// operations unify the field pointers.
class FieldElement {
public:
    FieldElement() : rep_{} {}
    FieldElement(int v) : rep_{} { if (v) rep_ = {Rational(v)}; }
    FieldElement(long v) : rep_{} { if (v) rep_ = {Rational(v)}; }
    FieldElement(long long v) : FieldElement(static_cast<long>(v)) {}
    FieldElement(const Rational& r) : rep_{} { if (r != 0) rep_ = {r}; }
    FieldElement(FieldPtr field, PolyQ rep);

    static FieldElement generator(const FieldPtr& field); // residue class of x

    const FieldPtr& field() const noexcept { return field_; }
    const PolyQ& rep() const noexcept { return rep_; }
    bool is_zero() const noexcept { return rep_.empty(); }
    bool is_rational() const noexcept { return rep_.size() <= 1; }
    Rational rational_value() const {
        if (!is_rational()) throw Error("invalid_argument", "field element is not rational");
        return rep_.empty() ? Rational(0) : rep_[0];
    }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const { return *this * o.inverse(); }
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o) { *this = *this + o; return *this; }
    FieldElement& operator-=(const FieldElement& o) { *this = *this - o; return *this; }
    FieldElement& operator*=(const FieldElement& o) { *this = *this * o; return *this; }
    bool operator==(const FieldElement& o) const { return (*this - o).is_zero(); }

    FieldElement inverse() const;
    FieldElement pow(long e) const;

    BigComplex embed() const; // numeric image at the current working precision
    std::string str() const;

private:
    static FieldPtr unify(const FieldPtr& a, const FieldPtr& b);

    FieldPtr field_; // may be null (rational constant)
    PolyQ rep_;      // degree < deg(m) when field_ set; degree <= 0 otherwise
};

inline FieldElement operator*(const Rational& c, const FieldElement& x) { return FieldElement(c) * x; }

// evaluate a Laurent polynomial at a field element / complex scalar
FieldElement evaluate_laurent(const LaurentPolynomial& p, const FieldElement& x);
BigComplex   evaluate_laurent(const LaurentPolynomial& p, const BigComplex& x);

struct LambdaField {
    FieldPtr field;
    FieldElement lambda;
};

// Given Delta and an approximate root mu of Delta, build the smallest field
// containing a square root lambda of mu: factor q(x) = p(x^2) where p is the
// irreducible factor of Delta with root mu, and pick the irreducible factor of
// q with a root lambda, lambda^2 ~ mu.
LambdaField make_lambda_field(const LaurentPolynomial& delta, std::complex<double> root_selector);

} // namespace knotrep
