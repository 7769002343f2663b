#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "feq/random.hpp"
#include "feq/rational.hpp"

using namespace feq;

TEST_CASE("canonical form") {
    Rational q(Int(6), Int(-4));
    CHECK(q.numerator() == -3);
    CHECK(q.denominator() == 2);
    CHECK(Rational(0).str() == "0/1");
    CHECK(Rational(Int(0), Int(7)).str() == "0/1");
    CHECK_THROWS_AS(Rational(Int(1), Int(0)), std::domain_error);
}

TEST_CASE("parse round-trip") {
    CHECK(Rational::parse("3/4") == Rational(Int(3), Int(4)));
    CHECK(Rational::parse("-10") == Rational(-10));
    CHECK(Rational::parse("6/-4") == Rational(Int(-3), Int(2)));
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("a/2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1.5"), std::invalid_argument);
}

TEST_CASE("floor") {
    CHECK(Rational::parse("7/2").floor() == 3);
    CHECK(Rational::parse("-7/2").floor() == -4);
    CHECK(Rational(5).floor() == 5);
    CHECK(Rational(-5).floor() == -5);
}

// Independent cross-multiplication oracle: arithmetic computed directly on
// big integers with an explicit gcd reduction.
namespace {
struct Frac {
    Int n, d;
    Frac reduced() const {
        Int g = boost::multiprecision::gcd(n < 0 ? Int(-n) : n, d < 0 ? Int(-d) : d);
        if (g == 0) return {0, 1};
        Int nn = n / g, dd = d / g;
        if (dd < 0) { nn = -nn; dd = -dd; }
        return {nn, dd};
    }
};
bool agrees(const Rational& q, const Frac& f) {
    Frac r = f.reduced();
    return q.numerator() == r.n && q.denominator() == r.d;
}
} // namespace

TEST_CASE("arithmetic agrees with the cross-multiplication oracle") {
    Rng rng(2024);
    for (int i = 0; i < 1000; ++i) {
        Int an(rng.next_in(-100000, 100000)), ad(rng.next_in(1, 100000));
        Int bn(rng.next_in(-100000, 100000)), bd(rng.next_in(1, 100000));
        Rational a(an, ad), b(bn, bd);
        CHECK(agrees(a + b, Frac{an * bd + bn * ad, ad * bd}));
        CHECK(agrees(a - b, Frac{an * bd - bn * ad, ad * bd}));
        CHECK(agrees(a * b, Frac{an * bn, ad * bd}));
        if (bn != 0) CHECK(agrees(a / b, Frac{an * bd, ad * bn}));
    }
}

TEST_CASE("reduction is idempotent") {
    Rng rng(7);
    for (int i = 0; i < 1000; ++i) {
        Rational a = rng.next_rational(1 << 20, 1 << 20);
        Rational again(a.numerator(), a.denominator());
        CHECK(a == again);
        CHECK(boost::multiprecision::gcd(a.numerator() < 0 ? Int(-a.numerator()) : a.numerator(),
                                         a.denominator()) == 1);
        CHECK(a.denominator() >= 1);
    }
}

TEST_CASE("pow_rational") {
    CHECK(pow_rational(Int(3), 4) == Rational(81));
    CHECK(pow_rational(Int(3), -2) == Rational(Int(1), Int(9)));
    CHECK(pow_rational(Int(5), 0) == Rational(1));
}

TEST_CASE("binomial and factorial") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(5, 6) == 0);
    CHECK(factorial(6) == 720);
}
