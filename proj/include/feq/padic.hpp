#pragma once

// p-adic view of exact rationals: valuation, absolute value, digit
// expansions and ball membership. Every rational embeds in Q_p; the library
// never leaves Q, so all of this is exact.

#include "feq/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace feq {

inline bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

struct PAdicContext {
    unsigned prime;
    unsigned display_precision;

    explicit PAdicContext(unsigned p, unsigned K = 8)
        : prime(p), display_precision(K) {
        if (!is_prime(p)) throw std::invalid_argument("PAdicContext: " + std::to_string(p) + " is not prime");
        if (K < 1) throw std::invalid_argument("PAdicContext: precision must be >= 1");
    }
};

// Integer valuation with an explicit infinity for zero.
class Valuation {
public:
    static Valuation infinity() { return Valuation(); }
    static Valuation finite(long v) { Valuation r; r.v_ = v; return r; }

    bool is_infinite() const { return !v_.has_value(); }
    long value() const {
        if (is_infinite()) throw std::domain_error("Valuation: infinite");
        return *v_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) { return a.v_ == b.v_; }
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.is_infinite()) return false;
        if (b.is_infinite()) return true;
        return *a.v_ < *b.v_;
    }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return a < b || a == b; }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }
    friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }

    std::string str() const { return is_infinite() ? "inf" : std::to_string(*v_); }

private:
    std::optional<long> v_;
};

inline long p_multiplicity(Int n, const Int& p) {
    long m = 0;
    while (n % p == 0) {
        n /= p;
        ++m;
    }
    return m;
}

// v with x = p^v * u, u a p-unit; infinity for x = 0.
inline Valuation valuation(const Rational& x, const PAdicContext& ctx) {
    if (x.is_zero()) return Valuation::infinity();
    Int p(ctx.prime);
    Int n = x.numerator();
    if (n < 0) n = -n;
    return Valuation::finite(p_multiplicity(n, p) - p_multiplicity(x.denominator(), p));
}

// |x|_p = p^{-v(x)}, 0 for x = 0.
inline Rational abs_p(const Rational& x, const PAdicContext& ctx) {
    Valuation v = valuation(x, ctx);
    if (v.is_infinite()) return Rational(0);
    return pow_rational(Int(ctx.prime), -v.value());
}

// true iff x lies in center + p^N Z_p.
inline bool ball_contains(const Rational& center, long exponent, const Rational& x,
                          const PAdicContext& ctx) {
    Valuation v = valuation(x - center, ctx);
    return v.is_infinite() || v.value() >= exponent;
}

struct PAdicView {
    Valuation valuation;            // m, infinity for zero
    std::vector<unsigned> digits;   // a_m .. a_{m+K-1}

    // "a_m a_{m+1} ... * p^m (p=...)"
    std::string render(const PAdicContext& ctx) const {
        if (valuation.is_infinite()) return "0 (p=" + std::to_string(ctx.prime) + ")";
        std::string s;
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(digits[i]);
        }
        s += "*" + std::to_string(ctx.prime) + "^" + std::to_string(valuation.value());
        s += " (p=" + std::to_string(ctx.prime) + ")";
        return s;
    }
};

inline Int mod_inverse(Int a, const Int& m) {
    Int r0 = m, r1 = ((a % m) + m) % m, t0 = 0, t1 = 1;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        r0 = r1; r1 = r2;
        Int t2 = t0 - q * t1;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw std::domain_error("mod_inverse: not invertible");
    return ((t0 % m) + m) % m;
}

// First K digits of x in Q_p. The partial sum sum a_k p^k agrees with x to
// order p^{m+K}; digits come from iterated reduction with the modular
// inverse of the p-free denominator.
inline PAdicView digit_expansion(const Rational& x, const PAdicContext& ctx) {
    PAdicView view;
    view.valuation = valuation(x, ctx);
    if (view.valuation.is_infinite()) return view;

    Int p(ctx.prime);
    long m = view.valuation.value();
    // x = p^m * n/d with p coprime to n and d
    Rational u = x / pow_rational(p, m);
    Int n = u.numerator(), d = u.denominator();
    Int dinv = mod_inverse(d, p);
    for (unsigned k = 0; k < ctx.display_precision; ++k) {
        Int a = ((n * dinv) % p + p) % p;
        view.digits.push_back(static_cast<unsigned>(a));
        n = (n - a * d) / p;
    }
    return view;
}

struct UltrametricReport {
    Rational abs_x, abs_y, abs_sum;
    bool equality_holds;
};

// Checks |x+y|_p = max(|x|_p,|y|_p); only claimed for |x|_p != |y|_p.
inline UltrametricReport ultrametric_dominance(const Rational& x, const Rational& y,
                                               const PAdicContext& ctx) {
    UltrametricReport r{abs_p(x, ctx), abs_p(y, ctx), abs_p(x + y, ctx), false};
    if (r.abs_x == r.abs_y)
        throw std::domain_error("ultrametric_dominance: |x|_p = |y|_p, property not claimed");
    r.equality_holds = r.abs_sum == (r.abs_x > r.abs_y ? r.abs_x : r.abs_y);
    return r;
}

} // namespace feq
