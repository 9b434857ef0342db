#include "knotrep/bigcomplex.hpp"

#include <cmath>

namespace knotrep {

namespace {
thread_local int g_precision_bits = 256;

unsigned digits10_for_bits(int bits) {
    return static_cast<unsigned>(std::ceil(bits * 0.30102999566398119521)) + 2;
}
} // namespace

int working_precision_bits() { return g_precision_bits; }

void set_working_precision(int bits) {
    if (bits < 64) throw Error("invalid_argument", "precision must be at least 64 bits");
    g_precision_bits = bits;
    BigFloat::default_precision(digits10_for_bits(bits));
}

std::string BigComplex::str(unsigned digits) const {
    if (digits == 0) digits = digits10_for_bits(g_precision_bits) - 2;
    std::string re = re_.str(digits);
    if (im_ == 0) return re;
    std::string im = boost::multiprecision::abs(im_).str(digits);
    return re + (im_ < 0 ? " - " : " + ") + im + "i";
}

BigComplex parse_big_complex(const std::string& text) {
    // strip whitespace
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw Error("parse_error", "empty complex literal");
    // split into real and imaginary summands at a '+'/'-' not following 'e'/'E'
    size_t split = std::string::npos;
    for (size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
    }
    auto parse_part = [](std::string part, bool expect_i) -> BigFloat {
        bool has_i = !part.empty() && (part.back() == 'i' || part.back() == 'I');
        if (has_i != expect_i)
            throw Error("parse_error", "bad complex literal part: '" + part + "'");
        if (has_i) {
            part.pop_back();
            if (part.empty() || part == "+") part = "1";
            else if (part == "-") part = "-1";
        }
        try {
            return BigFloat(part);
        } catch (...) {
            throw Error("parse_error", "bad number: '" + part + "'");
        }
    };
    bool tail_is_imag = s.back() == 'i' || s.back() == 'I';
    if (split == std::string::npos) {
        if (tail_is_imag) return {BigFloat(0), parse_part(s, true)};
        return {parse_part(s, false), BigFloat(0)};
    }
    if (!tail_is_imag) throw Error("parse_error", "expected trailing 'i' in '" + text + "'");
    return {parse_part(s.substr(0, split), false), parse_part(s.substr(split), true)};
}

BigFloat pow2(long k) {
    BigFloat r(1);
    mpfr_mul_2si(r.backend().data(), r.backend().data(), k, MPFR_RNDN);
    return r;
}

} // namespace knotrep
