#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "knotrep/foxcalc.hpp"

using namespace knotrep;

namespace {

Word W(std::initializer_list<std::pair<int, int>> ls) {
    Word w;
    for (auto& [g, e] : ls) w.push(g, e);
    return w;
}

Word random_word(std::mt19937& rng, int gens, int len) {
    Word w;
    for (int i = 0; i < len; ++i) w.push(static_cast<int>(rng() % gens), rng() % 2 ? 1 : -1);
    return w;
}

// trefoil relator S T S T^-1 S^-1 T^-1 (S = 0, T = 1)
const Word kTrefoil = W({{0, 1}, {1, 1}, {0, 1}, {1, -1}, {0, -1}, {1, -1}});

} // namespace

TEST_CASE("free reduction") {
    CHECK(W({{0, 1}, {0, -1}}).empty());
    CHECK(W({{0, 1}, {1, 1}, {1, -1}, {0, -1}}).empty());
    Word w = W({{0, 1}, {1, 1}});
    CHECK((w * w.inverse()).empty());
    CHECK(w.inverse().inverse() == w);
    CHECK(w.size() == 2);
}

TEST_CASE("word substitution is a homomorphism") {
    std::mt19937 rng(7);
    Word repl = W({{1, 1}, {2, -1}});
    for (int i = 0; i < 50; ++i) {
        Word a = random_word(rng, 3, 6), b = random_word(rng, 3, 6);
        CHECK((a * b).substituted(0, repl) == a.substituted(0, repl) * b.substituted(0, repl));
    }
}

TEST_CASE("fox axioms") {
    // d(xy)/dx = 1
    CHECK(fox_derivative(W({{0, 1}, {1, 1}}), 0) == GroupRingElement::one());
    // d(x^-1)/dx = -x^-1
    CHECK(fox_derivative(W({{0, -1}}), 0) == GroupRingElement::from_word(W({{0, -1}}), -1));
    // d(h)/dg = 0 for h != g
    CHECK(fox_derivative(W({{1, 1}}), 0).is_zero());
}

TEST_CASE("trefoil relator derivative matches the closed form") {
    // d r / dS = 1 + ST - STST^-1S^-1
    GroupRingElement expected = GroupRingElement::one();
    expected.add(W({{0, 1}, {1, 1}}), 1);
    expected.add(W({{0, 1}, {1, 1}, {0, 1}, {1, -1}, {0, -1}}), -1);
    CHECK(fox_derivative(kTrefoil, 0) == expected);
}

TEST_CASE("fundamental identity: sum_i (dr/dg_i)(g_i - 1) = r - 1") {
    std::mt19937 rng(1234);
    auto check_word = [](const Word& w, int gens) {
        GroupRingElement lhs;
        for (int g = 0; g < gens; ++g) {
            GroupRingElement d = fox_derivative(w, g);
            lhs = lhs + d.times_word(Word::generator(g)) - d;
        }
        GroupRingElement rhs = GroupRingElement::from_word(w) - GroupRingElement::one();
        CHECK(lhs == rhs);
    };
    check_word(kTrefoil, 2);
    for (int i = 0; i < 100; ++i) check_word(random_word(rng, 4, 2 + static_cast<int>(rng() % 12)), 4);
}

TEST_CASE("chain rule: d(w w^-1) = 0") {
    std::mt19937 rng(99);
    for (int i = 0; i < 50; ++i) {
        Word w = random_word(rng, 3, 1 + static_cast<int>(rng() % 10));
        Word e = w * w.inverse();
        for (int g = 0; g < 3; ++g) CHECK(fox_derivative(e, g).is_zero());
    }
}

TEST_CASE("evaluation is ring-homomorphic") {
    // abelianization action t^phi with t = 2 over exact rationals
    ModuleAction<Rational> ab;
    ab.dim = 1;
    for (int i = 0; i < 3; ++i) {
        Matrix<Rational> m(1, 1), mi(1, 1);
        m(0, 0) = Rational(2);
        mi(0, 0) = Rational(1, 2);
        ab.act.push_back(m);
        ab.act_inv.push_back(mi);
    }
    std::mt19937 rng(5);
    for (int i = 0; i < 40; ++i) {
        Word a = random_word(rng, 3, 5), b = random_word(rng, 3, 5);
        CHECK(evaluate_word(a * b, ab) == evaluate_word(a, ab) * evaluate_word(b, ab));
        long weight = a.phi_weight({1, 1, 1});
        CHECK(evaluate_word(a, ab)(0, 0) == rat_pow(Rational(2), weight));
    }
    // identity element evaluates to the identity matrix
    CHECK(evaluate(GroupRingElement::one(), ab)(0, 0) == Rational(1));
    // linearity over sums
    GroupRingElement e = GroupRingElement::from_word(W({{0, 1}}), 3) - GroupRingElement::from_word(W({{1, -1}}), 2);
    CHECK(evaluate(e, ab)(0, 0) == Rational(3) * 2 - Rational(2) / 2);
}

TEST_CASE("trefoil derivative abelianized at t gives the Alexander entry") {
    ModuleAction<LaurentPolynomial> ab;
    ab.dim = 1;
    for (int i = 0; i < 2; ++i) {
        Matrix<LaurentPolynomial> m(1, 1), mi(1, 1);
        m(0, 0) = LaurentPolynomial::t_power(1);
        mi(0, 0) = LaurentPolynomial::t_power(-1);
        ab.act.push_back(m);
        ab.act_inv.push_back(mi);
    }
    LaurentPolynomial v = evaluate(fox_derivative(kTrefoil, 0), ab)(0, 0);
    CHECK(v == LaurentPolynomial(0, parse_poly("1-t+t^2", "t")));
}
