#pragma once

// Extension certificates: exact signed combinations of difference-operator
// instances whose steps lie in a restricted hypothesis domain and whose
// formal expansion equals a target difference functional. A certificate is
// evidence that the restricted-step hypothesis forces the unrestricted
// equation at the target; the verifier re-expands everything from scratch
// and never trusts generator arithmetic.
//
// Order-1 decompositions are translation invariant, so they are represented
// as chains of (coefficient, offset, step) pieces with
//   Delta_h[x] = sum_i c_i Delta_{g_i}[x + o_i],
// and higher orders compose them coordinate-wise through the product
// structure of the mixed functional.

#include "feq/difference.hpp"
#include "feq/functional.hpp"
#include "feq/padic.hpp"
#include "feq/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace feq {

struct RealOpenInterval {
    Rational lo, hi;

    RealOpenInterval(Rational a, Rational b) : lo(std::move(a)), hi(std::move(b)) {
        if (!(lo < hi)) throw std::invalid_argument("RealOpenInterval: need a < b");
    }

    bool contains(const Rational& h) const { return lo < h && h < hi; }
    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / Rational(2); }
};

// Complement of the ball center + p^{-N} Z_p: membership iff |h - center|_p > p^N.
struct PAdicBallComplement {
    Rational center;
    long exponent;  // N
    PAdicContext ctx;

    PAdicBallComplement(Rational a, long N, PAdicContext c)
        : center(std::move(a)), exponent(N), ctx(c) {}

    bool contains(const Rational& h) const {
        Valuation v = valuation(h - center, ctx);
        return !v.is_infinite() && v.value() < -exponent;
    }
};

struct FullSpace {};

using StepDomain = std::variant<RealOpenInterval, PAdicBallComplement, FullSpace>;

inline bool domain_contains(const StepDomain& d, const Rational& h) {
    return std::visit(
        [&](const auto& dom) {
            if constexpr (std::is_same_v<std::decay_t<decltype(dom)>, FullSpace>)
                return true;
            else
                return dom.contains(h);
        },
        d);
}

struct MixedHypothesis {
    std::vector<StepDomain> factors;
};

struct EqualStepHypothesis {
    RealOpenInterval interval;
    int order;
};

using HypothesisDomain = std::variant<MixedHypothesis, EqualStepHypothesis>;

enum class InstanceKind { mixed, equal_step };

struct Instance {
    Rational coefficient;
    InstanceKind kind;
    Rational base;
    std::vector<Rational> steps;  // one entry for equal_step
    int order;
};

inline FormalFunctional<Rational> expand_instance(const Instance& inst) {
    if (inst.kind == InstanceKind::mixed) {
        auto fn = mixed_expansion(std::span<const Rational>(inst.steps), inst.base);
        FormalFunctional<Rational> out;
        out.add_scaled(fn, inst.coefficient);
        return out;
    }
    auto fn = equal_step_expansion(inst.steps.at(0), inst.order, inst.base);
    FormalFunctional<Rational> out;
    out.add_scaled(fn, inst.coefficient);
    return out;
}

// Evaluates the instance's operator on f directly; an independent route from
// expand_instance.
template <class F>
Rational apply_instance(const Instance& inst, F&& f) {
    if (inst.kind == InstanceKind::mixed)
        return inst.coefficient * mixed_difference(f, std::span<const Rational>(inst.steps), inst.base);
    return inst.coefficient * equal_step_difference(f, inst.steps.at(0), inst.order, inst.base);
}

struct ExtensionCertificate {
    FormalFunctional<Rational> target;
    std::vector<Instance> instances;
    std::string provenance;

    template <class F>
    Rational apply_instances(F&& f) const {
        Rational acc(0);
        for (const auto& inst : instances) acc += apply_instance(inst, f);
        return acc;
    }
};

// Merges instances with identical (kind, base, steps, order), dropping
// cancelled ones; keeps certificate bodies deterministic.
inline void canonicalize_instances(std::vector<Instance>& instances) {
    using Key = std::tuple<int, Rational, std::vector<Rational>, int>;
    std::map<Key, Rational> merged;
    for (auto& inst : instances) {
        Key k{static_cast<int>(inst.kind), inst.base, inst.steps, inst.order};
        merged[k] += inst.coefficient;
    }
    std::vector<Instance> out;
    for (auto& [k, c] : merged) {
        if (c.is_zero()) continue;
        out.push_back(Instance{c, static_cast<InstanceKind>(std::get<0>(k)), std::get<1>(k),
                               std::get<2>(k), std::get<3>(k)});
    }
    instances = std::move(out);
}

struct Verdict {
    bool accepted = false;
    std::string diagnostics;
    FormalFunctional<Rational> residual;
};

inline Verdict verify_certificate(const ExtensionCertificate& cert, const HypothesisDomain& hyp) {
    Verdict v;
    for (std::size_t i = 0; i < cert.instances.size(); ++i) {
        const Instance& inst = cert.instances[i];
        if (const auto* mixed = std::get_if<MixedHypothesis>(&hyp)) {
            if (inst.kind != InstanceKind::mixed ||
                inst.steps.size() != mixed->factors.size()) {
                v.diagnostics = "instance " + std::to_string(i) + ": wrong kind or arity";
                return v;
            }
            for (std::size_t k = 0; k < inst.steps.size(); ++k) {
                if (!domain_contains(mixed->factors[k], inst.steps[k])) {
                    v.diagnostics = "instance " + std::to_string(i) + ": step " +
                                    std::to_string(k) + " = " + inst.steps[k].str() +
                                    " outside its hypothesis domain";
                    return v;
                }
            }
        } else {
            const auto& eq = std::get<EqualStepHypothesis>(hyp);
            if (inst.kind != InstanceKind::equal_step || inst.order != eq.order ||
                inst.steps.size() != 1) {
                v.diagnostics = "instance " + std::to_string(i) + ": wrong kind or order";
                return v;
            }
            if (!eq.interval.contains(inst.steps[0])) {
                v.diagnostics = "instance " + std::to_string(i) + ": step " +
                                inst.steps[0].str() + " outside (" + eq.interval.lo.str() +
                                ", " + eq.interval.hi.str() + ")";
                return v;
            }
        }
    }

    FormalFunctional<Rational> sum;
    for (const auto& inst : cert.instances) sum.add_scaled(expand_instance(inst), Rational(1));
    v.residual = sum - cert.target;
    if (!v.residual.empty()) {
        v.diagnostics = "formal expansion does not match the target (residual has " +
                        std::to_string(v.residual.size()) + " terms)";
        return v;
    }
    v.accepted = true;
    return v;
}

// ---------------------------------------------------------------------------
// Order-1 decompositions as translation-invariant chains.

struct ChainPiece {
    Rational coefficient, offset, step;
};

// Covering/telescoping decomposition for an open interval (a, b): choose
// k = floor(2|h|/(b-a)) + 1, h2 = (a+b)/2 - h/(2k), h1 = h2 + h/k. Both lie
// strictly inside (a, b) because |h|/k < (b-a)/2, and k*h1 = h + k*h2 makes
// the two telescoping chains meet:
//   Delta_h[x] = sum_j Delta_{h1}[x + j h1] - sum_j Delta_{h2}[x + h + j h2].
inline std::vector<ChainPiece> interval_order1_pieces(const RealOpenInterval& I, const Rational& h) {
    if (I.contains(h)) return {ChainPiece{Rational(1), Rational(0), h}};
    Int k = (Rational(2) * h.abs() / I.width()).floor() + 1;
    Rational kr(k);
    Rational h2 = I.midpoint() - h / (Rational(2) * kr);
    Rational h1 = h2 + h / kr;
    std::vector<ChainPiece> pieces;
    for (Int j = 0; j < k; ++j) {
        pieces.push_back(ChainPiece{Rational(1), Rational(j) * h1, h1});
    }
    for (Int j = 0; j < k; ++j) {
        pieces.push_back(ChainPiece{Rational(-1), h + Rational(j) * h2, h2});
    }
    return pieces;
}

// Two-instance decomposition for the complement of center + p^{-N} Z_p:
// pick u = p^{-M} with M = max(N, k0) + 1, k0 = -v(center) (k0 = N when the
// center is 0). Both u and u + h then lie in the complement by the strict
// ultrametric equality, and
//   Delta_h[x] = Delta_{u+h}[x] - Delta_u[x + h].
inline std::vector<ChainPiece> padic_order1_pieces(const PAdicBallComplement& D, const Rational& h) {
    if (D.contains(h)) return {ChainPiece{Rational(1), Rational(0), h}};
    long k0;
    if (D.center.is_zero()) {
        k0 = D.exponent;
    } else {
        k0 = -valuation(D.center, D.ctx).value();
    }
    long M = std::max(D.exponent, k0) + 1;
    Rational u = pow_rational(Int(D.ctx.prime), -M);
    return {ChainPiece{Rational(1), Rational(0), u + h},
            ChainPiece{Rational(-1), h, u}};
}

inline std::vector<ChainPiece> order1_pieces(const StepDomain& d, const Rational& h) {
    return std::visit(
        [&](const auto& dom) -> std::vector<ChainPiece> {
            using T = std::decay_t<decltype(dom)>;
            if constexpr (std::is_same_v<T, FullSpace>)
                return {ChainPiece{Rational(1), Rational(0), h}};
            else if constexpr (std::is_same_v<T, RealOpenInterval>)
                return interval_order1_pieces(dom, h);
            else
                return padic_order1_pieces(dom, h);
        },
        d);
}

inline ExtensionCertificate pieces_to_order1_certificate(const std::vector<ChainPiece>& pieces,
                                                         const Rational& x, const Rational& h,
                                                         std::string provenance) {
    ExtensionCertificate cert;
    cert.provenance = std::move(provenance);
    cert.target = mixed_expansion(std::span<const Rational>(&h, 1), x);
    for (const auto& piece : pieces)
        cert.instances.push_back(
            Instance{piece.coefficient, InstanceKind::mixed, x + piece.offset, {piece.step}, 1});
    canonicalize_instances(cert.instances);
    return cert;
}

inline ExtensionCertificate real_order1_certificate(const Rational& x, const Rational& h,
                                                    const RealOpenInterval& I) {
    return pieces_to_order1_certificate(interval_order1_pieces(I, h), x, h,
                                        "real-order1 interval (" + I.lo.str() + "," + I.hi.str() + ")");
}

inline ExtensionCertificate padic_order1_certificate(const Rational& x, const Rational& h,
                                                     const PAdicBallComplement& D) {
    return pieces_to_order1_certificate(
        padic_order1_pieces(D, h), x, h,
        "padic-order1 complement center=" + D.center.str() + " N=" + std::to_string(D.exponent) +
            " p=" + std::to_string(D.ctx.prime));
}

// Long-form alternative to the two-instance decomposition: a chain of p^m
// steps h/p^m, each inside the complement.
//   Delta_h[x] = sum_{j=0}^{p^m - 1} Delta_{h/p^m}[x + j h/p^m].
inline ExtensionCertificate telescoping_padic_certificate(const Rational& x, const Rational& h,
                                                          const PAdicBallComplement& D, int m,
                                                          long max_length = 4096) {
    if (m < 0) throw std::invalid_argument("telescoping_padic_certificate: negative exponent");
    if (m == 0 && D.contains(h))
        return pieces_to_order1_certificate({ChainPiece{Rational(1), Rational(0), h}}, x, h,
                                            "padic-telescope m=0");
    Int length = boost::multiprecision::pow(Int(D.ctx.prime), static_cast<unsigned>(m));
    if (length > max_length)
        throw std::length_error("telescoping_padic_certificate: chain length exceeds budget");
    Rational step = h / Rational(length);
    if (!D.contains(step))
        throw std::domain_error("telescoping_padic_certificate: refined step still inside the ball");
    std::vector<ChainPiece> pieces;
    for (Int j = 0; j < length; ++j)
        pieces.push_back(ChainPiece{Rational(1), Rational(j) * step, step});
    return pieces_to_order1_certificate(pieces, x, h,
                                        "padic-telescope m=" + std::to_string(m));
}

// Coordinate-wise composition: the mixed functional factors as a product of
// order-1 functionals, so substituting each coordinate's chain and expanding
// the product yields a signed combination of full mixed instances with every
// step inside its domain.
inline ExtensionCertificate mixed_extension_certificate(const Rational& x,
                                                        const std::vector<Rational>& target_steps,
                                                        const MixedHypothesis& hyp,
                                                        std::size_t max_instances = 100000) {
    const std::size_t s = target_steps.size();
    if (s == 0 || hyp.factors.size() != s)
        throw std::invalid_argument("mixed_extension_certificate: arity mismatch");

    std::vector<std::vector<ChainPiece>> chains;
    std::size_t total = 1;
    for (std::size_t k = 0; k < s; ++k) {
        chains.push_back(order1_pieces(hyp.factors[k], target_steps[k]));
        total *= chains.back().size();
        if (total > max_instances)
            throw std::length_error("mixed_extension_certificate: instance budget exceeded");
    }

    ExtensionCertificate cert;
    cert.provenance = "mixed-extension s=" + std::to_string(s);
    cert.target = mixed_expansion(std::span<const Rational>(target_steps), x);

    std::vector<std::size_t> idx(s, 0);
    while (true) {
        Instance inst;
        inst.kind = InstanceKind::mixed;
        inst.coefficient = Rational(1);
        inst.base = x;
        inst.order = static_cast<int>(s);
        for (std::size_t k = 0; k < s; ++k) {
            const ChainPiece& piece = chains[k][idx[k]];
            inst.coefficient *= piece.coefficient;
            inst.base += piece.offset;
            inst.steps.push_back(piece.step);
        }
        cert.instances.push_back(std::move(inst));

        std::size_t k = 0;
        while (k < s && ++idx[k] == chains[k].size()) idx[k++] = 0;
        if (k == s) break;
    }
    canonicalize_instances(cert.instances);
    return cert;
}

enum class Side { negative, positive };

// Extension into equal-step instances with steps strictly inside (0, delta)
// or (-delta, 0): first land all mixed steps in (-delta/s, 0), then expand
// each mixed instance into equal-step instances whose step
// alpha = -sum eps_r g_r / r satisfies 0 < alpha < delta (the harmonic-sum
// bound, strict on the open interval). The eps = 0 term is the empty
// functional and is dropped. For the negative side every instance is pushed
// through the reflection identity.
inline ExtensionCertificate equal_step_extension_certificate(const Rational& x,
                                                             const std::vector<Rational>& target_steps,
                                                             const Rational& delta, Side side,
                                                             std::size_t max_instances = 100000) {
    if (!(Rational(0) < delta))
        throw std::invalid_argument("equal_step_extension_certificate: delta must be positive");
    const int s = static_cast<int>(target_steps.size());
    if (s < 1) throw std::invalid_argument("equal_step_extension_certificate: empty step list");

    RealOpenInterval out_interval = side == Side::positive
                                        ? RealOpenInterval(Rational(0), delta)
                                        : RealOpenInterval(-delta, Rational(0));
    ExtensionCertificate cert;
    cert.provenance = "equal-step-extension s=" + std::to_string(s) + " delta=" + delta.str() +
                      (side == Side::positive ? " side=pos" : " side=neg");
    cert.target = mixed_expansion(std::span<const Rational>(target_steps), x);

    if (s == 1) {
        for (const auto& piece : interval_order1_pieces(out_interval, target_steps[0]))
            cert.instances.push_back(Instance{piece.coefficient, InstanceKind::equal_step,
                                              x + piece.offset, {piece.step}, 1});
        canonicalize_instances(cert.instances);
        return cert;
    }

    RealOpenInterval inner(-delta / Rational(s), Rational(0));
    MixedHypothesis inner_hyp;
    inner_hyp.factors.assign(s, StepDomain(inner));
    ExtensionCertificate mixed_cert =
        mixed_extension_certificate(x, target_steps, inner_hyp, max_instances);

    for (const Instance& minst : mixed_cert.instances) {
        for (const auto& t : epsilon_terms(std::span<const Rational>(minst.steps))) {
            bool all_zero = true;
            for (int e : t.epsilon) all_zero &= (e == 0);
            if (all_zero) continue;

            Rational coeff = minst.coefficient * Rational(t.sign);
            Rational step = t.alpha;
            Rational base = minst.base + t.beta;
            if (side == Side::negative) {
                // Delta^s_a[y] = (-1)^s Delta^s_{-a}[y + s a]
                base += Rational(s) * step;
                step = -step;
                if (s % 2 != 0) coeff = -coeff;
            }
            cert.instances.push_back(Instance{coeff, InstanceKind::equal_step, base, {step}, s});
            if (cert.instances.size() > max_instances)
                throw std::length_error("equal_step_extension_certificate: instance budget exceeded");
        }
    }
    canonicalize_instances(cert.instances);
    return cert;
}

} // namespace feq
