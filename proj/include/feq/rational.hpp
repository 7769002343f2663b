#pragma once

// Exact rational scalars. All points, steps and coefficients in the library
// are rationals (or live in a quadratic extension of them); nothing is ever
// rounded.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace feq {

using Int = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always reduced, denominator >= 1,
// zero canonically 0/1. Canonical text form is "num/den".
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}
    Rational(const Int& n) : v_(n) {}
    Rational(const Int& num, const Int& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        // the backing type requires a positive denominator
        v_ = den < 0 ? boost::multiprecision::cpp_rational(-num, -den)
                     : boost::multiprecision::cpp_rational(num, den);
    }

    Int numerator() const { return boost::multiprecision::numerator(v_); }
    Int denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_ == 0; }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return v_ < 0 ? -1 : (v_ > 0 ? 1 : 0); }

    Rational operator-() const { return Rational(-v_); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational abs() const { return v_ < 0 ? Rational(-v_) : *this; }

    // Largest integer <= *this.
    Int floor() const {
        Int q = numerator() / denominator();
        if (v_ < 0 && q * denominator() != numerator()) q -= 1;
        return q;
    }

    std::string str() const {
        return numerator().str() + "/" + denominator().str();
    }

    // Accepts "num/den" or a plain integer, optionally signed.
    static Rational parse(std::string_view s) {
        auto bad = [&] { throw std::invalid_argument("Rational::parse: '" + std::string(s) + "'"); };
        if (s.empty()) bad();
        auto slash = s.find('/');
        auto check_int = [&](std::string_view t) {
            if (t.empty()) bad();
            std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
            if (i == t.size()) bad();
            for (; i < t.size(); ++i)
                if (t[i] < '0' || t[i] > '9') bad();
        };
        if (slash == std::string_view::npos) {
            check_int(s);
            return Rational(Int(std::string(s)));
        }
        std::string_view ns = s.substr(0, slash), ds = s.substr(slash + 1);
        check_int(ns);
        check_int(ds);
        return Rational(Int(std::string(ns)), Int(std::string(ds)));
    }

private:
    explicit Rational(boost::multiprecision::cpp_rational v) : v_(std::move(v)) {}
    boost::multiprecision::cpp_rational v_;
};

// p^e as an exact rational, e may be negative.
inline Rational pow_rational(const Int& base, long e) {
    if (base == 0) throw std::domain_error("pow_rational: zero base");
    Int p = boost::multiprecision::pow(base, static_cast<unsigned>(e < 0 ? -e : e));
    return e < 0 ? Rational(Int(1), p) : Rational(p);
}

inline Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

inline Int factorial(int n) {
    Int r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace feq
