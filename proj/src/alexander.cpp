#include "knotrep/alexander.hpp"

#include <algorithm>

namespace knotrep {

Matrix<LaurentPolynomial> alexander_matrix(const KnotPresentation& p) {
    ModuleAction<LaurentPolynomial> ab;
    ab.dim = 1;
    ab.descriptor = "t^phi";
    for (int i = 0; i < p.generators; ++i) {
        Matrix<LaurentPolynomial> m(1, 1), mi(1, 1);
        m(0, 0) = LaurentPolynomial::t_power(p.phi[static_cast<size_t>(i)]);
        mi(0, 0) = LaurentPolynomial::t_power(-p.phi[static_cast<size_t>(i)]);
        ab.act.push_back(std::move(m));
        ab.act_inv.push_back(std::move(mi));
    }
    Matrix<LaurentPolynomial> A(static_cast<int>(p.relators.size()), p.generators);
    for (int j = 0; j < A.rows(); ++j)
        for (int i = 0; i < p.generators; ++i)
            A(j, i) = evaluate(fox_derivative(p.relators[static_cast<size_t>(j)], i), ab)(0, 0);
    return A;
}

LaurentPolynomial alexander_polynomial(const KnotPresentation& p) {
    Matrix<LaurentPolynomial> A = alexander_matrix(p);
    const int rows = A.rows(), cols = A.cols();
    if (rows != cols - 1)
        throw Error("invalid_argument", "Alexander polynomial needs a deficiency-one presentation");
    LaurentPolynomial g; // zero
    for (int dc = 0; dc < cols; ++dc) {
        LaurentPolynomial minor = det_bareiss(A.delete_column(dc));
        if (minor.is_zero()) continue;
        g = g.is_zero() ? minor : laurent_gcd(g, minor);
    }
    if (g.is_zero()) throw Error("not_a_knot", "all Alexander minors vanish");
    // canonical form: lowest exponent 0, primitive integer palindromic
    // coefficients, positive leading coefficient
    PolyQ c = poly_primitive(g.shifted_poly());
    LaurentPolynomial delta(0, c);
    // knot polynomials satisfy Delta(t) ~ Delta(1/t); check palindromy
    bool pal = true;
    for (size_t i = 0; i < c.size(); ++i) pal &= c[i] == c[c.size() - 1 - i];
    if (!pal) {
        bool antipal = true;
        for (size_t i = 0; i < c.size(); ++i) antipal &= c[i] == -c[c.size() - 1 - i];
        if (!antipal)
            throw Error("not_a_knot", "first elementary ideal generator is not symmetric");
    }
    Rational at1 = delta.evaluate_rational(Rational(1));
    if (at1 != 1 && at1 != -1)
        throw Error("not_a_knot", "Delta(1) = " + to_string(at1) + ", expected +-1");
    return delta;
}

std::string HypothesisReport::summary() const {
    std::string s = "lambda=" + lambda_str + " n=" + std::to_string(n);
    s += verdict ? ": hypotheses hold" : ": hypotheses fail";
    if (!verdict && first_failure_k == 1) s += " (lambda^2 not a simple root)";
    if (!verdict && first_failure_k >= 2)
        s += " (fails at k=" + std::to_string(first_failure_k) + ")";
    return s;
}

HypothesisReport check_hypotheses(const LaurentPolynomial& delta, const FieldElement& lambda, int n) {
    auto rep = check_hypotheses_impl(
        delta, lambda, n, [](const FieldElement& v) { return v.is_zero(); },
        FieldElement(lambda.field(), PolyQ{Rational(1)}));
    rep.lambda_str = lambda.str();
    return rep;
}

HypothesisReport check_hypotheses(const LaurentPolynomial& delta, const BigComplex& lambda, int n) {
    // numeric zero test relative to the coefficient scale
    BigFloat scale(0);
    for (const auto& c : delta.coefficients()) {
        BigFloat a = boost::multiprecision::abs(BigFloat(BigComplex(c).real()));
        if (a > scale) scale = a;
    }
    BigFloat tol = scale * pow2(-working_precision_bits() / 2);
    auto rep = check_hypotheses_impl(
        delta, lambda, n, [&](const BigComplex& v) { return v.abs() < tol; }, BigComplex(1));
    rep.lambda_str = lambda.str(20);
    return rep;
}

} // namespace knotrep
