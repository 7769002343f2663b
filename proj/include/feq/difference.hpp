#pragma once

// Finite difference operators. A mixed difference with steps h_1..h_s is the
// alternating sum over the 2^s corner points x + sum_{r in S} h_r; the
// equal-step difference is the binomial alternating sum. Three identities
// connect them: the decomposition of a mixed difference into equal-step
// instances, permutation invariance of the steps, and the reflection
// identity.

#include "feq/functional.hpp"
#include "feq/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace feq {

template <class F, class Scalar>
Scalar forward_difference(F&& f, const Scalar& h, const Scalar& x) {
    return f(x + h) - f(x);
}

// Subset-sum expansion of Delta_{h_1...h_s} f(x).
template <class F, class Scalar>
Scalar mixed_difference(F&& f, std::span<const Scalar> steps, const Scalar& x) {
    const std::size_t s = steps.size();
    if (s == 0) throw std::invalid_argument("mixed_difference: empty step list");
    Scalar acc{};
    for (std::size_t mask = 0; mask < (std::size_t{1} << s); ++mask) {
        Scalar point = x;
        int bits = 0;
        for (std::size_t r = 0; r < s; ++r)
            if (mask >> r & 1) {
                point += steps[r];
                ++bits;
            }
        Rational sign(((s - bits) % 2 == 0) ? 1 : -1);
        acc += Scalar(sign) * f(point);
    }
    return acc;
}

// Delta_{h_1}(Delta_{h_2...h_s} f)(x); kept as a cross-check of the
// subset-sum expansion.
template <class F, class Scalar>
Scalar mixed_difference_recursive(F&& f, std::span<const Scalar> steps, const Scalar& x) {
    if (steps.empty()) throw std::invalid_argument("mixed_difference: empty step list");
    if (steps.size() == 1) return forward_difference(f, steps[0], x);
    auto rest = steps.subspan(1);
    auto inner = [&](const Scalar& y) { return mixed_difference_recursive(f, rest, y); };
    return forward_difference(inner, steps[0], x);
}

// Delta_h^s f(x) = sum_k C(s,k)(-1)^{s-k} f(x+kh)
template <class F, class Scalar>
Scalar equal_step_difference(F&& f, const Scalar& h, int s, const Scalar& x) {
    if (s < 1) throw std::invalid_argument("equal_step_difference: order must be >= 1");
    Scalar acc{};
    Scalar point = x;
    for (int k = 0; k <= s; ++k) {
        Rational c(binomial(s, k) * (((s - k) % 2 == 0) ? 1 : -1));
        acc += Scalar(c) * f(point);
        if (k < s) point += h;
    }
    return acc;
}

template <class Scalar>
FormalFunctional<Scalar> mixed_expansion(std::span<const Scalar> steps, const Scalar& x) {
    const std::size_t s = steps.size();
    if (s == 0) throw std::invalid_argument("mixed_expansion: empty step list");
    FormalFunctional<Scalar> fn;
    for (std::size_t mask = 0; mask < (std::size_t{1} << s); ++mask) {
        Scalar point = x;
        int bits = 0;
        for (std::size_t r = 0; r < s; ++r)
            if (mask >> r & 1) {
                point += steps[r];
                ++bits;
            }
        fn.add_term(point, Rational(((s - bits) % 2 == 0) ? 1 : -1));
    }
    return fn;
}

// Equal-step expansion; for h = 0 the signed binomial coefficients cancel
// and the functional is empty.
template <class Scalar>
FormalFunctional<Scalar> equal_step_expansion(const Scalar& h, int s, const Scalar& x) {
    if (s < 1) throw std::invalid_argument("equal_step_expansion: order must be >= 1");
    FormalFunctional<Scalar> fn;
    Scalar point = x;
    for (int k = 0; k <= s; ++k) {
        fn.add_term(point, Rational(binomial(s, k) * (((s - k) % 2 == 0) ? 1 : -1)));
        if (k < s) point += h;
    }
    return fn;
}

// One term of the decomposition of a mixed difference into equal-step
// differences: for epsilon in {0,1}^s,
//   alpha = -sum_r eps_r h_r / r,  beta = sum_r eps_r h_r,  sign = (-1)^{sum eps}.
template <class Scalar>
struct EpsilonTerm {
    std::vector<int> epsilon;
    int sign = 1;
    Scalar alpha{};
    Scalar beta{};
};

template <class Scalar>
std::vector<EpsilonTerm<Scalar>> epsilon_terms(std::span<const Scalar> steps) {
    const std::size_t s = steps.size();
    std::vector<EpsilonTerm<Scalar>> out;
    out.reserve(std::size_t{1} << s);
    for (std::size_t mask = 0; mask < (std::size_t{1} << s); ++mask) {
        EpsilonTerm<Scalar> t;
        t.epsilon.resize(s, 0);
        for (std::size_t r = 0; r < s; ++r) {
            if (mask >> r & 1) {
                t.epsilon[r] = 1;
                t.sign = -t.sign;
                Scalar term = steps[r] * Scalar(Rational(Int(1), Int(static_cast<long>(r) + 1)));
                t.alpha -= term;
                t.beta += steps[r];
            }
        }
        out.push_back(std::move(t));
    }
    return out;
}

template <class Scalar>
struct EqualityReport {
    Scalar lhs{}, rhs{};
    bool equal = false;
    std::string detail;
};

// Decomposition of the mixed difference into equal-step instances:
//   Delta_{h_1..h_s} f(x) = sum_{eps} sign(eps) Delta^s_{alpha(eps)} f(x + beta(eps)).
// The eps = 0 term has alpha = 0 and expands to the empty functional; it is
// dropped.
template <class F, class Scalar>
EqualityReport<Scalar> decomposition_identity_check(F&& f, std::span<const Scalar> steps, const Scalar& x) {
    EqualityReport<Scalar> rep;
    rep.lhs = mixed_difference(f, steps, x);
    const int s = static_cast<int>(steps.size());
    Scalar rhs{};
    for (const auto& t : epsilon_terms(steps)) {
        if (std::all_of(t.epsilon.begin(), t.epsilon.end(), [](int e) { return e == 0; }))
            continue;
        rhs += Scalar(Rational(t.sign)) * equal_step_difference(f, t.alpha, s, x + t.beta);
    }
    rep.rhs = rhs;
    rep.equal = rep.lhs == rep.rhs;
    if (!rep.equal) rep.detail = "mixed and equal-step decompositions disagree";
    return rep;
}

template <class F, class Scalar>
EqualityReport<Scalar> permutation_invariance_check(F&& f, std::span<const Scalar> steps,
                                                    const Scalar& x, std::span<const int> sigma) {
    const std::size_t s = steps.size();
    if (sigma.size() != s) throw std::invalid_argument("permutation_invariance_check: size mismatch");
    std::vector<int> seen(s, 0);
    for (int i : sigma) {
        if (i < 0 || static_cast<std::size_t>(i) >= s || seen[i]++)
            throw std::invalid_argument("permutation_invariance_check: malformed permutation");
    }
    std::vector<Scalar> permuted(s);
    for (std::size_t i = 0; i < s; ++i) permuted[i] = steps[sigma[i]];

    EqualityReport<Scalar> rep;
    rep.lhs = mixed_difference(f, steps, x);
    rep.rhs = mixed_difference(f, std::span<const Scalar>(permuted), x);
    rep.equal = rep.lhs == rep.rhs;
    if (!rep.equal) rep.detail = "mixed difference is not invariant under the permutation";
    return rep;
}

// Delta_{-h}^s f(x) = (-1)^s Delta_h^s f(x - s h)
template <class F, class Scalar>
EqualityReport<Scalar> reflection_identity_check(F&& f, const Scalar& h, int s, const Scalar& x) {
    EqualityReport<Scalar> rep;
    rep.lhs = equal_step_difference(f, -h, s, x);
    Scalar shifted = x - Scalar(Rational(s)) * h;
    rep.rhs = Scalar(Rational(s % 2 == 0 ? 1 : -1)) * equal_step_difference(f, h, s, shifted);
    rep.equal = rep.lhs == rep.rhs;
    if (!rep.equal) rep.detail = "reflection identity violated";
    return rep;
}

} // namespace feq
