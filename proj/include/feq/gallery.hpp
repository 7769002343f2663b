#pragma once

// The evaluable function gallery: exact polynomials, the p-adic ball
// indicator, the rational/irrational class-piecewise function on a quadratic
// extension, and seeded tabulated functions whose values are deterministic
// hashes of the evaluation point. Tabulated functions realize arbitrary
// function values, which makes them the adversaries of choice for identities
// that must hold for every f.

#include "feq/difference.hpp"
#include "feq/padic.hpp"
#include "feq/quadratic.hpp"
#include "feq/rational.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace feq {

inline std::string canonical_key(const Rational& x) { return x.str(); }
inline std::string canonical_key(const Quadratic& x) {
    return x.rational_part().str() + "|" + x.surd_part().str() + "|d" + std::to_string(x.radicand());
}

template <class Scalar>
class PolynomialFn {
public:
    explicit PolynomialFn(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}

    Scalar operator()(const Scalar& x) const {
        Scalar acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + Scalar(*it);
        return acc;
    }

    const std::vector<Rational>& coefficients() const { return coeffs_; }

private:
    std::vector<Rational> coeffs_;  // constant term first
};

// Indicator of the ball center + p^N Z_p, with exact 0/1 rational values.
class BallIndicatorFn {
public:
    BallIndicatorFn(Rational center, long exponent, PAdicContext ctx)
        : center_(std::move(center)), exponent_(exponent), ctx_(ctx) {}

    Rational operator()(const Rational& x) const {
        return ball_contains(center_, exponent_, x, ctx_) ? Rational(1) : Rational(0);
    }

    const Rational& center() const { return center_; }
    long exponent() const { return exponent_; }
    const PAdicContext& context() const { return ctx_; }

private:
    Rational center_;
    long exponent_;
    PAdicContext ctx_;
};

// f(x) = x on the rational class, x^2 on the irrational class of Q(sqrt d).
class ClassPiecewiseFn {
public:
    explicit ClassPiecewiseFn(int radicand = 2) : d_(radicand) {
        if (!is_squarefree(radicand)) throw std::invalid_argument("ClassPiecewiseFn: bad radicand");
    }

    Quadratic operator()(const Quadratic& x) const {
        if (!x.is_rational() && x.radicand() != d_)
            throw std::domain_error("ClassPiecewiseFn: radicand mismatch");
        return x.is_rational() ? x : x * x;
    }

    int radicand() const { return d_; }

private:
    int d_;
};

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(const std::string& s, std::uint64_t seed) {
    std::uint64_t h = 14695981039346656037ULL ^ splitmix64(seed);
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Deterministic pseudo-random function: the value at x is a rational with
// numerator and denominator bounded by 2^32, drawn from a seeded hash of
// the canonical serialization of x. Memoized per instance.
template <class Scalar>
class TabulatedFn {
public:
    explicit TabulatedFn(std::uint64_t seed) : seed_(seed) {}

    Scalar operator()(const Scalar& x) const {
        auto it = memo_.find(x);
        if (it != memo_.end()) return it->second;
        std::uint64_t h = fnv1a64(canonical_key(x), seed_);
        std::uint64_t h2 = splitmix64(h);
        const std::uint64_t bound = 1ULL << 32;
        long long num = static_cast<long long>(h % (2 * bound + 1)) - static_cast<long long>(bound);
        unsigned long long den = (h2 % bound) + 1;
        Scalar v{Rational(Int(num), Int(den))};
        memo_.emplace(x, v);
        return v;
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    mutable std::map<Scalar, Scalar> memo_;
};

// Mixed third differences of the class-piecewise function vanish whenever
// all three steps are rational: rational shifts preserve the class of every
// corner point, so f acts on the corners as a polynomial of degree <= 2.
inline EqualityReport<Quadratic> rational_step_vanishing_check(std::span<const Quadratic> steps,
                                                         const Quadratic& x,
                                                         int radicand = 2) {
    if (steps.size() != 3) throw std::invalid_argument("rational_step_vanishing_check: need three steps");
    for (const auto& h : steps)
        if (!h.is_rational())
            throw std::invalid_argument("rational_step_vanishing_check: steps must be rational");
    ClassPiecewiseFn f(radicand);
    EqualityReport<Quadratic> rep;
    rep.lhs = mixed_difference(f, steps, x);
    rep.rhs = Quadratic();
    rep.equal = rep.lhs == rep.rhs;
    if (!rep.equal) rep.detail = "third mixed difference with rational steps did not vanish";
    return rep;
}

struct IrrationalStepWitness {
    Quadratic x;
    Quadratic h;
    int order;
    // Value of Delta_h^order f(x); callers must recompute rather than trust it.
    Quadratic claimed_value;
};

// A concrete instance where the class-piecewise function violates the
// unrestricted equal-step equation.
inline IrrationalStepWitness irrational_step_witness() {
    IrrationalStepWitness w;
    w.x = Quadratic(Rational(2));
    w.h = Quadratic::sqrt_d(2);
    w.order = 3;
    w.claimed_value = Quadratic(Rational(2));
    return w;
}

// Adding a step inside the ball radius cannot move x across the ball
// boundary, so the forward difference of the indicator vanishes.
inline EqualityReport<Rational> ball_indicator_local_flatness(const BallIndicatorFn& f,
                                                             const Rational& x,
                                                             const Rational& h) {
    Valuation vh = valuation(h, f.context());
    if (!vh.is_infinite() && vh.value() < f.exponent())
        throw std::domain_error("ball_indicator_local_flatness: |h|_p exceeds the ball radius");
    EqualityReport<Rational> rep;
    rep.lhs = forward_difference(f, h, x);
    rep.rhs = Rational(0);
    rep.equal = rep.lhs == rep.rhs;
    if (!rep.equal) rep.detail = "indicator moved under an in-radius step";
    return rep;
}

} // namespace feq
