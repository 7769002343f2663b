#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "feq/extension.hpp"
#include "feq/gallery.hpp"
#include "feq/random.hpp"
#include "support/exact_linalg.hpp"

#include <map>
#include <vector>

using namespace feq;

namespace {

// Builds an explicit function table lying in the kernel of every instance's
// difference functional (ignoring certificate coefficients), then applies
// the target to it. A sound certificate forces the result to zero.
Rational target_on_kernel_function(const ExtensionCertificate& cert,
                                   const std::vector<Rational>& free_values) {
    std::map<Rational, std::size_t> index;
    auto touch = [&](const FormalFunctional<Rational>& fn) {
        for (const auto& [pt, c] : fn.terms()) index.emplace(pt, 0);
    };
    touch(cert.target);
    std::vector<FormalFunctional<Rational>> expansions;
    for (const auto& inst : cert.instances) {
        Instance unit = inst;
        unit.coefficient = Rational(1);
        expansions.push_back(expand_instance(unit));
        touch(expansions.back());
    }
    std::size_t n = 0;
    for (auto& [pt, i] : index) i = n++;

    testsupport::Matrix<Rational> rows;
    for (const auto& fn : expansions) {
        std::vector<Rational> row(n, Rational(0));
        for (const auto& [pt, c] : fn.terms()) row[index.at(pt)] = c;
        rows.push_back(std::move(row));
    }
    testsupport::KernelSampler sampler(rows, n);
    auto table = sampler.sample(free_values);

    // the sampled table must actually annihilate every instance
    for (const auto& fn : expansions) {
        Rational acc(0);
        for (const auto& [pt, c] : fn.terms()) acc += c * table[index.at(pt)];
        REQUIRE(acc.is_zero());
    }
    Rational out(0);
    for (const auto& [pt, c] : cert.target.terms()) out += c * table[index.at(pt)];
    return out;
}

} // namespace

TEST_CASE("step domain membership") {
    RealOpenInterval I(Rational(1), Rational(2));
    CHECK(I.contains(Rational(Int(3), Int(2))));
    CHECK_FALSE(I.contains(Rational(1)));
    CHECK_FALSE(I.contains(Rational(2)));
    CHECK_THROWS_AS(RealOpenInterval(Rational(2), Rational(2)), std::invalid_argument);

    PAdicBallComplement D(Rational(0), 1, PAdicContext(3));
    CHECK(D.contains(Rational(Int(1), Int(9))));   // |.|_3 = 9 > 3
    CHECK_FALSE(D.contains(Rational(Int(1), Int(3))));  // |.|_3 = 3, inside the ball
    CHECK_FALSE(D.contains(Rational(0)));
}

TEST_CASE("verifier rejects bad certificates") {
    RealOpenInterval I(Rational(1), Rational(2));
    MixedHypothesis hyp{{StepDomain(I)}};
    Rational x(0), h(Int(3), Int(2));

    SUBCASE("endpoint step fails membership") {
        auto cert = real_order1_certificate(x, h, I);
        cert.instances[0].steps[0] = Rational(2);  // tamper: h = b
        auto v = verify_certificate(cert, hyp);
        CHECK_FALSE(v.accepted);
        CHECK(v.diagnostics.find("outside") != std::string::npos);
    }
    SUBCASE("empty instance list leaves the whole target as residual") {
        auto cert = real_order1_certificate(x, h, I);
        cert.instances.clear();
        auto v = verify_certificate(cert, hyp);
        CHECK_FALSE(v.accepted);
        CHECK(v.residual.size() == cert.target.size());
    }
    SUBCASE("tampered coefficient leaves a residual") {
        auto cert = real_order1_certificate(x, Rational(10), I);
        cert.instances[0].coefficient += Rational(1);
        auto v = verify_certificate(cert, hyp);
        CHECK_FALSE(v.accepted);
        CHECK_FALSE(v.residual.empty());
    }
}

TEST_CASE("real order-1 certificates") {
    RealOpenInterval I(Rational(1), Rational(2));
    MixedHypothesis hyp{{StepDomain(I)}};

    SUBCASE("in-domain step gives the single-instance certificate") {
        auto cert = real_order1_certificate(Rational(0), Rational(Int(3), Int(2)), I);
        CHECK(cert.instances.size() == 1);
        CHECK(verify_certificate(cert, hyp).accepted);
    }
    SUBCASE("h = 10 pinned chain") {
        auto cert = real_order1_certificate(Rational(0), Rational(10), I);
        CHECK(cert.instances.size() == 42);  // 2k with k = 21
        auto v = verify_certificate(cert, hyp);
        CHECK(v.accepted);
        // the two chain steps are 73/42 and 53/42
        bool saw_h1 = false, saw_h2 = false;
        for (const auto& inst : cert.instances) {
            saw_h1 |= inst.steps[0] == Rational(Int(73), Int(42));
            saw_h2 |= inst.steps[0] == Rational(Int(53), Int(42));
        }
        CHECK(saw_h1);
        CHECK(saw_h2);
    }
    SUBCASE("negative target step") {
        auto cert = real_order1_certificate(Rational(0), Rational(-10), I);
        CHECK(verify_certificate(cert, hyp).accepted);
    }
    SUBCASE("random instances verify, have the predicted size, and are sound") {
        Rng rng(3);
        for (int trial = 0; trial < 100; ++trial) {
            Rational a = rng.next_rational(50, 20);
            // width >= 1/2 keeps chain lengths small enough for the kernel solve
            Rational b = a + Rational(Int(1 + rng.next_in(0, 8)), Int(2));
            RealOpenInterval J(a, b);
            Rational x = rng.next_rational(100, 50);
            Rational h = rng.next_nonzero_rational(10, 4);
            auto cert = real_order1_certificate(x, h, J);
            MixedHypothesis jhyp{{StepDomain(J)}};
            CHECK(verify_certificate(cert, jhyp).accepted);
            std::size_t expected = J.contains(h)
                ? 1
                : static_cast<std::size_t>(2 * ((Rational(2) * h.abs() / J.width()).floor() + 1));
            CHECK(cert.instances.size() == expected);
            std::vector<Rational> frees{rng.next_rational(50, 50), rng.next_rational(50, 50),
                                        rng.next_rational(50, 50)};
            CHECK(target_on_kernel_function(cert, frees).is_zero());
        }
    }
}

TEST_CASE("p-adic order-1 certificates") {
    PAdicContext p3(3);
    SUBCASE("pinned two-instance decomposition at a = 0") {
        PAdicBallComplement D(Rational(0), 1, p3);
        auto cert = padic_order1_certificate(Rational(0), Rational(Int(1), Int(3)), D);
        REQUIRE(cert.instances.size() == 2);
        MixedHypothesis hyp{{StepDomain(D)}};
        CHECK(verify_certificate(cert, hyp).accepted);
        bool saw_u_plus_h = false, saw_u = false;
        for (const auto& inst : cert.instances) {
            saw_u_plus_h |= inst.steps[0] == Rational(Int(4), Int(9));
            saw_u |= inst.steps[0] == Rational(Int(1), Int(9)) && inst.base == Rational(Int(1), Int(3));
        }
        CHECK(saw_u_plus_h);
        CHECK(saw_u);
    }
    SUBCASE("center with small absolute value") {
        PAdicBallComplement D(Rational(9), 0, p3);  // k0 = -2 < N
        auto cert = padic_order1_certificate(Rational(0), Rational(3), D);
        MixedHypothesis hyp{{StepDomain(D)}};
        CHECK(verify_certificate(cert, hyp).accepted);
        // M = 1, u = 1/3, |u - 9|_3 = 3 > 1
        CHECK(cert.instances.size() == 2);
    }
    SUBCASE("in-domain step short-circuits") {
        PAdicBallComplement D(Rational(0), 0, p3);
        auto cert = padic_order1_certificate(Rational(5), Rational(Int(1), Int(3)), D);
        CHECK(cert.instances.size() == 1);
    }
    SUBCASE("random soundness") {
        Rng rng(9);
        const unsigned primes[] = {2, 3, 5, 7};
        for (int trial = 0; trial < 100; ++trial) {
            PAdicContext ctx(primes[rng.next() % 4]);
            Rational center = (rng.next() % 3 == 0) ? Rational(0) : rng.next_rational(50, 50);
            PAdicBallComplement D(center, static_cast<long>(rng.next_in(-3, 3)), ctx);
            Rational x = rng.next_rational(100, 100);
            Rational h = rng.next_nonzero_rational(200, 200);
            auto cert = padic_order1_certificate(x, h, D);
            MixedHypothesis hyp{{StepDomain(D)}};
            CHECK(verify_certificate(cert, hyp).accepted);
            CHECK(cert.instances.size() == (D.contains(h) ? 1u : 2u));
            CHECK(target_on_kernel_function(cert, {rng.next_rational(50, 50)}).is_zero());
        }
    }
}

TEST_CASE("telescoping p-adic certificates") {
    PAdicContext p2(2);
    PAdicBallComplement D(Rational(0), 0, p2);
    MixedHypothesis hyp{{StepDomain(D)}};

    SUBCASE("two-term chain for h = 1, m = 1") {
        auto cert = telescoping_padic_certificate(Rational(0), Rational(1), D, 1);
        REQUIRE(cert.instances.size() == 2);
        for (const auto& inst : cert.instances)
            CHECK(inst.steps[0] == Rational(Int(1), Int(2)));
        CHECK(verify_certificate(cert, hyp).accepted);
    }
    SUBCASE("m = 0 with h already outside the ball") {
        auto cert = telescoping_padic_certificate(Rational(0), Rational(Int(1), Int(2)), D, 0);
        CHECK(cert.instances.size() == 1);
        CHECK(verify_certificate(cert, hyp).accepted);
    }
    SUBCASE("m too small is an error") {
        CHECK_THROWS_AS(telescoping_padic_certificate(Rational(0), Rational(4), D, 1),
                        std::domain_error);
    }
    SUBCASE("length budget enforced") {
        PAdicContext p7(7);
        PAdicBallComplement D7(Rational(0), 0, p7);
        CHECK_THROWS_AS(telescoping_padic_certificate(Rational(0), Rational(1), D7, 5, 1000),
                        std::length_error);
    }
    SUBCASE("agrees with the two-instance route on any function") {
        auto tele = telescoping_padic_certificate(Rational(0), Rational(1), D, 1);
        auto twostep = padic_order1_certificate(Rational(0), Rational(1), D);
        CHECK(tele.target == twostep.target);
        TabulatedFn<Rational> f(12);
        CHECK(tele.apply_instances(f) == twostep.apply_instances(f));
    }
}

TEST_CASE("mixed extension certificates") {
    SUBCASE("order 1 delegates to the order-1 generator") {
        RealOpenInterval I(Rational(1), Rational(2));
        MixedHypothesis hyp{{StepDomain(I)}};
        auto composed = mixed_extension_certificate(Rational(0), {Rational(10)}, hyp);
        auto direct = real_order1_certificate(Rational(0), Rational(10), I);
        CHECK(composed.target == direct.target);
        CHECK(composed.instances.size() == direct.instances.size());
        CHECK(verify_certificate(composed, hyp).accepted);
    }
    SUBCASE("pinned s = 2 example") {
        RealOpenInterval I(Rational(1), Rational(2));
        MixedHypothesis hyp{{StepDomain(I), StepDomain(I)}};
        auto cert = mixed_extension_certificate(Rational(0), {Rational(10), Rational(10)}, hyp);
        auto v = verify_certificate(cert, hyp);
        CHECK(v.accepted);
        CHECK(cert.instances.size() <= 42u * 42u);  // canonical merge may collapse
        TabulatedFn<Rational> f(77);
        CHECK(cert.apply_instances(f) == cert.target.apply(f));
    }
    SUBCASE("p-adic product domain") {
        PAdicContext p3(3);
        PAdicBallComplement D(Rational(0), 1, p3);
        MixedHypothesis hyp{{StepDomain(D), StepDomain(D)}};
        auto cert = mixed_extension_certificate(
            Rational(0), {Rational(Int(1), Int(3)), Rational(Int(1), Int(9))}, hyp);
        CHECK(verify_certificate(cert, hyp).accepted);
        CHECK(cert.instances.size() <= 4);
    }
    SUBCASE("budget enforced") {
        RealOpenInterval I(Rational(1), Rational(2));
        MixedHypothesis hyp{{StepDomain(I), StepDomain(I)}};
        CHECK_THROWS_AS(
            mixed_extension_certificate(Rational(0), {Rational(1000), Rational(1000)}, hyp, 100),
            std::length_error);
    }
}

TEST_CASE("equal-step extension certificates") {
    SUBCASE("order 1 reduces to the interval certificate") {
        auto cert = equal_step_extension_certificate(Rational(0), {Rational(5)}, Rational(1),
                                                     Side::positive);
        auto v = verify_certificate(
            cert, HypothesisDomain(EqualStepHypothesis{
                      RealOpenInterval(Rational(0), Rational(1)), 1}));
        CHECK(v.accepted);
    }
    SUBCASE("s = 2 positive side, pinned target (5,7)") {
        auto cert = equal_step_extension_certificate(Rational(0), {Rational(5), Rational(7)},
                                                     Rational(1), Side::positive);
        auto v = verify_certificate(
            cert, HypothesisDomain(EqualStepHypothesis{
                      RealOpenInterval(Rational(0), Rational(1)), 2}));
        CHECK(v.accepted);
        TabulatedFn<Rational> f(31);
        CHECK(cert.apply_instances(f) == cert.target.apply(f));
    }
    SUBCASE("negative side verifies against (-delta, 0)") {
        auto cert = equal_step_extension_certificate(Rational(1), {Rational(2), Rational(-3)},
                                                     Rational(2), Side::negative);
        auto v = verify_certificate(
            cert, HypothesisDomain(EqualStepHypothesis{
                      RealOpenInterval(Rational(-2), Rational(0)), 2}));
        CHECK(v.accepted);
        TabulatedFn<Rational> f(32);
        CHECK(cert.apply_instances(f) == cert.target.apply(f));
    }
    SUBCASE("alpha strictness for random inner draws") {
        Rng rng(41);
        for (int trial = 0; trial < 1000; ++trial) {
            int s = 2 + static_cast<int>(rng.next() % 3);
            Rational delta = rng.next_nonzero_rational(10, 5).abs();
            std::vector<Rational> steps;
            for (int k = 0; k < s; ++k) {
                // strictly inside (-delta/s, 0)
                Rational t(Int(1 + rng.next_in(0, 98)), Int(100));
                steps.push_back(-t * delta / Rational(s));
            }
            for (const auto& t : epsilon_terms(std::span<const Rational>(steps))) {
                bool nonzero = false;
                for (int e : t.epsilon) nonzero |= e == 1;
                if (!nonzero) continue;
                CHECK(Rational(0) < t.alpha);
                CHECK(t.alpha < delta);
            }
        }
    }
    SUBCASE("degenerate delta rejected") {
        CHECK_THROWS_AS(equal_step_extension_certificate(Rational(0), {Rational(1)}, Rational(0),
                                                         Side::positive),
                        std::invalid_argument);
    }
}
