#pragma once

// Formal point-mass functionals sum c_i * delta_{x_i}: the canonical
// algebraic form every difference operator expands into. Equality of
// functionals is exact map equality after dropping zero coefficients.

#include "feq/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace feq {

template <class Scalar>
class FormalFunctional {
public:
    using Terms = std::map<Scalar, Rational>;

    FormalFunctional() = default;

    void add_term(const Scalar& point, const Rational& coeff) {
        if (coeff.is_zero()) return;
        auto [it, inserted] = terms_.emplace(point, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    void add_scaled(const FormalFunctional& other, const Rational& scale) {
        for (const auto& [pt, c] : other.terms_) add_term(pt, c * scale);
    }

    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    friend FormalFunctional operator+(FormalFunctional a, const FormalFunctional& b) {
        a.add_scaled(b, Rational(1));
        return a;
    }
    friend FormalFunctional operator-(FormalFunctional a, const FormalFunctional& b) {
        a.add_scaled(b, Rational(-1));
        return a;
    }

    friend bool operator==(const FormalFunctional& a, const FormalFunctional& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const FormalFunctional& a, const FormalFunctional& b) {
        return !(a == b);
    }

    // sum c_i f(x_i)
    template <class F>
    auto apply(F&& f) const {
        Scalar acc{};
        for (const auto& [pt, c] : terms_) acc += Scalar(c) * f(pt);
        return acc;
    }

private:
    Terms terms_;
};

} // namespace feq
