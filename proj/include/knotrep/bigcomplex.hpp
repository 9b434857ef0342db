#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <complex>
#include <string>

#include "knotrep/rational.hpp"

namespace knotrep {

// arbitrary-precision real; working precision is set per thread via
// set_working_precision (bits), minimum 64
using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;

int  working_precision_bits();
void set_working_precision(int bits);

struct PrecisionGuard {
    explicit PrecisionGuard(int bits) : saved(working_precision_bits()) { set_working_precision(bits); }
    ~PrecisionGuard() { set_working_precision(saved); }
    int saved;
};

// complex scalar on top of BigFloat
class BigComplex {
public:
    BigComplex() : re_(0), im_(0) {}
    BigComplex(int v) : re_(v), im_(0) {}
    BigComplex(long v) : re_(v), im_(0) {}
    BigComplex(long long v) : re_(static_cast<long>(v)), im_(0) {}
    BigComplex(const BigFloat& re, const BigFloat& im = BigFloat(0)) : re_(re), im_(im) {}
    explicit BigComplex(const Rational& r) : re_(BigFloat(r.get_num().get_str()) / BigFloat(r.get_den().get_str())), im_(0) {}
    explicit BigComplex(std::complex<double> z) : re_(z.real()), im_(z.imag()) {}

    const BigFloat& real() const noexcept { return re_; }
    const BigFloat& imag() const noexcept { return im_; }

    BigComplex operator+(const BigComplex& o) const { return {re_ + o.re_, im_ + o.im_}; }
    BigComplex operator-(const BigComplex& o) const { return {re_ - o.re_, im_ - o.im_}; }
    BigComplex operator-() const { return {-re_, -im_}; }
    BigComplex operator*(const BigComplex& o) const {
        return {re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_};
    }
    BigComplex operator*(const Rational& c) const { return *this * BigComplex(c); }
    BigComplex operator/(const BigComplex& o) const {
        BigFloat d = o.re_ * o.re_ + o.im_ * o.im_;
        if (d == 0) throw Error("division_by_zero", "complex division by zero");
        return {(re_ * o.re_ + im_ * o.im_) / d, (im_ * o.re_ - re_ * o.im_) / d};
    }
    BigComplex& operator+=(const BigComplex& o) { re_ += o.re_; im_ += o.im_; return *this; }
    BigComplex& operator-=(const BigComplex& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    BigComplex& operator*=(const BigComplex& o) { *this = *this * o; return *this; }

    bool operator==(const BigComplex& o) const { return re_ == o.re_ && im_ == o.im_; }

    BigComplex conj() const { return {re_, -im_}; }
    BigFloat abs2() const { return re_ * re_ + im_ * im_; }
    BigFloat abs() const { return sqrt(abs2()); }

    std::string str(unsigned digits = 0) const;

    std::complex<double> to_double() const {
        return {static_cast<double>(re_), static_cast<double>(im_)};
    }

private:
    BigFloat re_, im_;
};

inline BigComplex operator*(const Rational& c, const BigComplex& z) { return z * c; }

BigComplex parse_big_complex(const std::string& text); // "a", "a+bi", "bi"

// 2^{-k} as BigFloat
BigFloat pow2(long k);

} // namespace knotrep
