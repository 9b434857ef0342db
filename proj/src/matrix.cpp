#include "knotrep/matrix.hpp"

namespace knotrep {

LaurentPolynomial exact_div(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return laurent_div_exact(a, b);
}

} // namespace knotrep
