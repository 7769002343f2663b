#pragma once

// Exact Lagrange interpolation and the propagation machinery behind the
// p-adic polynomiality argument: a vanishing (n+1)-st difference along an
// arithmetic progression forces the degree-n interpolant to keep matching f
// one node further, forward and backward; p-power refinements of the step
// must reproduce the same interpolant. Density and continuity arguments are
// replaced by finite-sample agreement, and each report records the checked
// base points so the untested remainder of the hypothesis is explicit.

#include "feq/difference.hpp"
#include "feq/padic.hpp"
#include "feq/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace feq {

template <class Scalar>
class DensePolynomial {
public:
    DensePolynomial() = default;
    explicit DensePolynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
        trim();
    }

    const std::vector<Scalar>& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

    Scalar operator()(const Scalar& x) const {
        Scalar acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    friend bool operator==(const DensePolynomial& a, const DensePolynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const DensePolynomial& a, const DensePolynomial& b) {
        return !(a == b);
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == Scalar{}) coeffs_.pop_back();
    }
    std::vector<Scalar> coeffs_;  // constant term first
};

// Classical Lagrange form, exact in the field.
template <class Scalar>
DensePolynomial<Scalar> lagrange_interpolate(const std::vector<Scalar>& nodes,
                                             const std::vector<Scalar>& values) {
    const std::size_t n = nodes.size();
    if (n == 0 || values.size() != n)
        throw std::invalid_argument("lagrange_interpolate: need equally many nodes and values");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (nodes[i] == nodes[j])
                throw std::invalid_argument("lagrange_interpolate: duplicate node");

    std::vector<Scalar> acc(n, Scalar{});
    std::vector<Scalar> basis;
    for (std::size_t i = 0; i < n; ++i) {
        // ell_i(t) = prod_{j != i} (t - x_j) / (x_i - x_j)
        basis.assign(1, Scalar{Rational(1)});
        Scalar denom{Rational(1)};
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            denom = denom * (nodes[i] - nodes[j]);
            basis.push_back(Scalar{});
            for (std::size_t k = basis.size() - 1; k > 0; --k)
                basis[k] = basis[k - 1] - nodes[j] * basis[k];
            basis[0] = Scalar{} - nodes[j] * basis[0];
        }
        Scalar w = values[i] / denom;
        for (std::size_t k = 0; k < basis.size(); ++k) acc[k] += basis[k] * w;
    }
    return DensePolynomial<Scalar>(std::move(acc));
}

struct InterpolationReport {
    bool ok = false;
    std::vector<Rational> nodes;
    std::vector<Rational> coefficients;
    // Base points where the vanishing hypothesis was actually checked; the
    // full hypothesis is universal, the check covers exactly this list.
    std::vector<Rational> checked_bases;
    std::vector<Rational> violations;     // bases where Delta^{n+1} f != 0
    std::vector<Rational> discrepancies;  // points where f != p0
    std::string note =
        "continuity of f and density of the node set are hypotheses this finite check does not test";
};

namespace detail {
template <class F>
bool check_vanishing(F&& f, const Rational& step, int order, const Rational& base,
                     InterpolationReport& rep) {
    rep.checked_bases.push_back(base);
    if (equal_step_difference(f, step, order, base) != Rational(0)) {
        rep.violations.push_back(base);
        return false;
    }
    return true;
}
} // namespace detail

// Interpolates f on the nodes x0 + k h0, k = 0..n, verifies the vanishing
// hypothesis at every base point the forward/backward propagation uses, and
// compares f with the interpolant on x0 + k h0 for k in [k_lo, k_hi].
template <class F>
InterpolationReport propagation_check(F&& f, const Rational& x0, const Rational& h0, int n,
                                      long k_lo, long k_hi) {
    if (h0.is_zero()) throw std::invalid_argument("propagation_check: zero step");
    if (n < 0 || k_lo > 0 || k_hi < n)
        throw std::invalid_argument("propagation_check: k range must contain {0..n}");

    InterpolationReport rep;
    std::vector<Rational> nodes, values;
    for (int k = 0; k <= n; ++k) {
        nodes.push_back(x0 + Rational(k) * h0);
        values.push_back(f(nodes.back()));
    }
    rep.nodes = nodes;
    auto p0 = lagrange_interpolate(nodes, values);
    rep.coefficients = p0.coefficients();

    bool ok = true;
    for (long k = 0; k + n + 1 <= k_hi; ++k)
        ok &= detail::check_vanishing(f, h0, n + 1, x0 + Rational(Int(k)) * h0, rep);
    for (long k = -1; k >= k_lo; --k)
        ok &= detail::check_vanishing(f, h0, n + 1, x0 + Rational(Int(k)) * h0, rep);
    if (!ok) {
        rep.ok = false;
        return rep;
    }

    for (long k = k_lo; k <= k_hi; ++k) {
        Rational t = x0 + Rational(Int(k)) * h0;
        if (f(t) != p0(t)) {
            rep.discrepancies.push_back(t);
            rep.ok = false;
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

struct RefinementReport {
    bool ok = false;
    std::vector<Rational> coarse_coefficients;
    std::vector<Rational> fine_coefficients;
    std::vector<Rational> violations;  // bases where a vanishing hypothesis failed
    std::string note;
};

// Interpolants built from nodes with step h0 and step h0/p^m must agree
// coefficient-wise; the vanishing hypothesis is checked at the bases 0..n of
// both lines first.
template <class F>
RefinementReport refinement_consistency(F&& f, const Rational& x0, const Rational& h0, int n,
                                        int m, const PAdicContext& ctx) {
    if (h0.is_zero()) throw std::invalid_argument("refinement_consistency: zero step");
    if (m < 0) throw std::invalid_argument("refinement_consistency: negative refinement exponent");

    RefinementReport rep;
    Rational fine_step = h0 / pow_rational(Int(ctx.prime), m);

    for (const Rational& step : {h0, fine_step}) {
        for (int k = 0; k <= n; ++k) {
            Rational base = x0 + Rational(k) * step;
            if (equal_step_difference(f, step, n + 1, base) != Rational(0))
                rep.violations.push_back(base);
        }
    }
    if (!rep.violations.empty()) {
        rep.note = "vanishing hypothesis fails along a line";
        return rep;
    }

    auto interpolate_on = [&](const Rational& step) {
        std::vector<Rational> nodes, values;
        for (int k = 0; k <= n; ++k) {
            nodes.push_back(x0 + Rational(k) * step);
            values.push_back(f(nodes.back()));
        }
        return lagrange_interpolate(nodes, values);
    };
    auto coarse = interpolate_on(h0);
    auto fine = interpolate_on(fine_step);
    rep.coarse_coefficients = coarse.coefficients();
    rep.fine_coefficients = fine.coefficients();
    rep.ok = coarse == fine;
    if (!rep.ok) rep.note = "interpolants disagree across refinement";
    return rep;
}

struct LocalReconstructReport {
    std::vector<Rational> nodes;
    std::vector<Rational> coefficients;
    std::vector<Rational> vanishing_violations;
    std::vector<std::pair<Rational, Rational>> residuals;  // (point, f - p0), nonzero only
    bool locally_polynomial = false;
    std::string note =
        "agreement is checked on a finite sample of a + p^N Z; continuity on the full ball is untested";
};

// Local reconstruction on the ball a + p^N Z_p: interpolate on a + k p^N
// (k = 0..n) and report vanishing violations and residuals on the sampled
// integer multiples. Violations are data, not errors.
template <class F>
LocalReconstructReport local_reconstruct(F&& f, const Rational& a, long N, int n,
                                         const PAdicContext& ctx, long sample_size) {
    if (sample_size < 1) throw std::invalid_argument("local_reconstruct: sample_size must be >= 1");
    LocalReconstructReport rep;
    Rational step = pow_rational(Int(ctx.prime), N);

    std::vector<Rational> nodes, values;
    for (int k = 0; k <= n; ++k) {
        nodes.push_back(a + Rational(k) * step);
        values.push_back(f(nodes.back()));
    }
    rep.nodes = nodes;
    auto p0 = lagrange_interpolate(nodes, values);
    rep.coefficients = p0.coefficients();

    for (long j = -sample_size; j <= sample_size; ++j) {
        Rational point = a + Rational(Int(j)) * step;
        if (equal_step_difference(f, step, n + 1, point) != Rational(0))
            rep.vanishing_violations.push_back(point);
        Rational residual = f(point) - p0(point);
        if (!residual.is_zero()) rep.residuals.emplace_back(point, residual);
    }
    rep.locally_polynomial = rep.vanishing_violations.empty() && rep.residuals.empty();
    return rep;
}

} // namespace feq
