#pragma once

// Elements a + b*sqrt(d) of a quadratic extension of the rationals. The
// radicand d is fixed per context (default 2); mixing radicands is rejected,
// except that pure rationals (b = 0) are compatible with any radicand.

#include "feq/rational.hpp"

#include <stdexcept>
#include <string>
#include <tuple>

namespace feq {

inline bool is_squarefree(int d) {
    if (d <= 1) return false;
    for (int q = 2; q * q <= d; ++q)
        if (d % (q * q) == 0) return false;
    return true;
}

class Quadratic {
public:
    Quadratic() : d_(2) {}
    Quadratic(Rational a) : a_(std::move(a)), d_(2) {}
    Quadratic(long a) : a_(a), d_(2) {}
    Quadratic(Rational a, Rational b, int d = 2)
        : a_(std::move(a)), b_(std::move(b)), d_(d) {
        if (!is_squarefree(d)) throw std::invalid_argument("Quadratic: radicand must be square-free and > 1");
    }

    static Quadratic sqrt_d(int d = 2) { return Quadratic(Rational(0), Rational(1), d); }

    const Rational& rational_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    int radicand() const { return d_; }

    bool is_rational() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    Quadratic operator-() const { return Quadratic(-a_, -b_, d_); }

    friend Quadratic operator+(const Quadratic& x, const Quadratic& y) {
        int d = join(x, y);
        return Quadratic(x.a_ + y.a_, x.b_ + y.b_, d);
    }
    friend Quadratic operator-(const Quadratic& x, const Quadratic& y) {
        int d = join(x, y);
        return Quadratic(x.a_ - y.a_, x.b_ - y.b_, d);
    }
    friend Quadratic operator*(const Quadratic& x, const Quadratic& y) {
        int d = join(x, y);
        return Quadratic(x.a_ * y.a_ + Rational(d) * x.b_ * y.b_,
                         x.a_ * y.b_ + x.b_ * y.a_, d);
    }
    friend Quadratic operator/(const Quadratic& x, const Quadratic& y) {
        int d = join(x, y);
        // norm a^2 - d b^2 vanishes only at zero since d is not a square
        Rational n = y.a_ * y.a_ - Rational(d) * y.b_ * y.b_;
        if (n.is_zero()) throw std::domain_error("Quadratic: division by zero");
        return Quadratic((x.a_ * y.a_ - Rational(d) * x.b_ * y.b_) / n,
                         (x.b_ * y.a_ - x.a_ * y.b_) / n, d);
    }

    Quadratic& operator+=(const Quadratic& o) { return *this = *this + o; }
    Quadratic& operator-=(const Quadratic& o) { return *this = *this - o; }
    Quadratic& operator*=(const Quadratic& o) { return *this = *this * o; }
    Quadratic& operator/=(const Quadratic& o) { return *this = *this / o; }

    friend bool operator==(const Quadratic& x, const Quadratic& y) {
        if (!x.is_rational() && !y.is_rational() && x.d_ != y.d_) return false;
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const Quadratic& x, const Quadratic& y) { return !(x == y); }

    // Canonical ordering for use as a map key; not the numeric order.
    friend bool operator<(const Quadratic& x, const Quadratic& y) {
        return std::tie(x.a_, x.b_) < std::tie(y.a_, y.b_);
    }

    std::string str() const {
        return a_.str() + " + " + b_.str() + "*sqrt(" + std::to_string(d_) + ")";
    }

private:
    static int join(const Quadratic& x, const Quadratic& y) {
        if (x.is_rational()) return y.d_;
        if (y.is_rational()) return x.d_;
        if (x.d_ != y.d_) throw std::domain_error("Quadratic: mixed radicands");
        return x.d_;
    }

    Rational a_, b_;
    int d_;
};

} // namespace feq
