#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace knotrep {

using Integer  = mpz_class;
using Rational = mpq_class;

// error with a machine-readable code, surfaced by the CLI as {code, message}
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

inline Rational rat_pow(const Rational& x, long e) {
    if (e == 0) return Rational(1);
    if (e < 0) {
        if (x == 0) throw Error("division_by_zero", "0 has no negative power");
        return rat_pow(Rational(1) / x, -e);
    }
    Rational acc(1), base(x);
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

// accepts "p", "p/q" and plain decimal strings like "-1.25"
inline Rational parse_rational(const std::string& s) {
    auto dot = s.find('.');
    if (dot == std::string::npos) {
        try {
            Rational r(s);
            r.canonicalize();
            return r;
        } catch (const std::invalid_argument&) {
            throw Error("parse_error", "bad rational: '" + s + "'");
        }
    }
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac_len = s.size() - dot - 1;
    try {
        Rational r(Integer(digits), Integer(1));
        for (size_t i = 0; i < frac_len; ++i) r /= 10;
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw Error("parse_error", "bad decimal: '" + s + "'");
    }
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

} // namespace knotrep
