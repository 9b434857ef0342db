#pragma once

#include <map>

#include "knotrep/foxcalc.hpp"
#include "knotrep/knots.hpp"
#include "knotrep/laurent.hpp"

namespace knotrep {

// (g-1) x g matrix of abelianized Fox derivatives, entry (j,i) = d(r_j)/d(g_i) at g -> t^{phi(g)}
Matrix<LaurentPolynomial> alexander_matrix(const KnotPresentation& p);

// gcd of maximal minors over all deleted columns, normalized to primitive
// palindromic coefficients with positive leading coefficient and lowest
// exponent 0
LaurentPolynomial alexander_polynomial(const KnotPresentation& p);

struct HypothesisReport {
    std::string lambda_str;
    int n = 0;
    bool simple_root = false;
    std::map<int, bool> power_conditions; // k in [2, n-1]: Delta(lambda^{2k}) != 0
    std::map<int, bool> unit_conditions;  // k in [2, n-1]: lambda^{2k} != 1
    bool verdict = false;
    int first_failure_k = 0; // 0 when none

    std::string summary() const;
};

// hypotheses of the smoothness theorem: lambda^2 a simple root of Delta and
// Delta(lambda^{2k}) != 0 for 2 <= k <= n-1. Whenever the verdict holds the
// derived unit conditions lambda^{2k} != 1 are asserted as well.
template <class S, class IsZero>
HypothesisReport check_hypotheses_impl(const LaurentPolynomial& delta, const S& lambda, int n,
                                       IsZero is_zero, const S& one) {
    if (n < 2) throw Error("invalid_argument", "n must be at least 2");
    HypothesisReport rep;
    rep.n = n;
    S lambda2 = lambda * lambda;
    auto inv = [](const S& v) { return exact_div(S(1), v); };
    if (!is_zero(delta.evaluate(lambda2, inv, one)))
        throw Error("not_a_root", "lambda^2 is not a root of Delta at the backend tolerance");
    auto split = squarefree_and_simple_roots(delta);
    rep.simple_root = is_zero(split.simple_part.evaluate(lambda2, inv, one)) &&
                      !is_zero(split.multiple_part.evaluate(lambda2, inv, one));
    rep.verdict = rep.simple_root;
    if (!rep.simple_root) rep.first_failure_k = 1;
    for (int k = 2; k <= n - 1; ++k) {
        S p = lambda2;
        for (int i = 1; i < k; ++i) p = p * lambda2;
        bool nonroot = !is_zero(delta.evaluate(p, inv, one));
        bool nonunit = !is_zero(p - one);
        rep.power_conditions[k] = nonroot;
        rep.unit_conditions[k] = nonunit;
        if (!nonroot && rep.verdict) {
            rep.verdict = false;
            rep.first_failure_k = k;
        }
    }
    if (rep.verdict)
        for (auto& [k, u] : rep.unit_conditions)
            if (!u)
                throw Error("internal_error",
                            "verdict true but lambda^{2k} = 1 at k=" + std::to_string(k) +
                                "; contradicts the symmetry argument");
    return rep;
}

HypothesisReport check_hypotheses(const LaurentPolynomial& delta, const FieldElement& lambda, int n);
HypothesisReport check_hypotheses(const LaurentPolynomial& delta, const BigComplex& lambda, int n);

} // namespace knotrep
