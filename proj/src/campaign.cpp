#include "feq/campaign.hpp"

#include "feq/difference.hpp"
#include "feq/extension.hpp"
#include "feq/gallery.hpp"
#include "feq/interpolation.hpp"
#include "feq/padic.hpp"
#include "feq/random.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>

namespace feq {

namespace {

constexpr std::size_t kMaxStoredFailures = 10;

void record_failure(SuiteResult& r, Json payload) {
    ++r.failed;
    if (r.failures.size() < kMaxStoredFailures) r.failures.push_back(std::move(payload));
}

void record(SuiteResult& r, bool ok, const std::function<Json()>& payload) {
    if (ok)
        ++r.passed;
    else
        record_failure(r, payload());
}

std::size_t suite_index(const std::string& name) {
    const auto& names = suite_names();
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw ConfigError("unknown suite: " + name);
    return static_cast<std::size_t>(it - names.begin());
}

unsigned pick_prime(const CampaignConfig& cfg, Rng& rng) {
    static const unsigned primes[] = {2, 3, 5, 7};
    return cfg.prime ? *cfg.prime : primes[rng.next() % 4];
}

std::vector<Rational> random_steps(Rng& rng, int s, long long max_num, long long max_den) {
    std::vector<Rational> steps;
    for (int i = 0; i < s; ++i) steps.push_back(rng.next_nonzero_rational(max_num, max_den));
    return steps;
}

Json steps_json(const std::vector<Rational>& steps) { return to_json(steps); }

// --- identity3: mixed vs equal-step decomposition, exact, every f ----------

SuiteResult run_identity3(const CampaignConfig& cfg) {
    SuiteResult r{"identity3"};
    const std::size_t sid = suite_index(r.name);
    for (int s : cfg.orders) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(derive_seed(cfg.seed, sid, static_cast<std::uint64_t>(s) * 1000003 + trial));
            TabulatedFn<Rational> f(rng.next());
            auto steps = random_steps(rng, s, 1 << 16, 1 << 16);
            Rational x = rng.next_rational(1 << 16, 1 << 16);
            auto rep = decomposition_identity_check(f, std::span<const Rational>(steps), x);
            record(r, rep.equal, [&] {
                return Json{{"order", s}, {"x", x.str()}, {"steps", steps_json(steps)},
                            {"lhs", rep.lhs.str()}, {"rhs", rep.rhs.str()}};
            });
        }
    }
    return r;
}

// --- permutation invariance ------------------------------------------------

SuiteResult run_permutation(const CampaignConfig& cfg) {
    SuiteResult r{"permutation"};
    const std::size_t sid = suite_index(r.name);
    for (int s : cfg.orders) {
        if (s > 4) continue;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(derive_seed(cfg.seed, sid, static_cast<std::uint64_t>(s) * 1000003 + trial));
            TabulatedFn<Rational> f(rng.next());
            auto steps = random_steps(rng, s, 1000, 1000);
            Rational x = rng.next_rational(1000, 1000);
            std::vector<int> sigma(s);
            std::iota(sigma.begin(), sigma.end(), 0);
            bool all_ok = true;
            std::vector<int> bad;
            do {
                auto rep = permutation_invariance_check(f, std::span<const Rational>(steps), x,
                                                        std::span<const int>(sigma));
                if (!rep.equal) {
                    all_ok = false;
                    bad = sigma;
                    break;
                }
            } while (std::next_permutation(sigma.begin(), sigma.end()));
            record(r, all_ok, [&] {
                return Json{{"order", s}, {"x", x.str()}, {"steps", steps_json(steps)},
                            {"permutation", bad}};
            });
        }
    }
    return r;
}

// --- reflection identity ---------------------------------------------------

SuiteResult run_reflection(const CampaignConfig& cfg) {
    SuiteResult r{"reflection"};
    const std::size_t sid = suite_index(r.name);
    for (int s : cfg.orders) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(derive_seed(cfg.seed, sid, static_cast<std::uint64_t>(s) * 1000003 + trial));
            TabulatedFn<Rational> f(rng.next());
            Rational h = rng.next_nonzero_rational(1000, 1000);
            Rational x = rng.next_rational(1000, 1000);
            auto rep = reflection_identity_check(f, h, s, x);
            record(r, rep.equal, [&] {
                return Json{{"order", s}, {"x", x.str()}, {"h", h.str()},
                            {"lhs", rep.lhs.str()}, {"rhs", rep.rhs.str()}};
            });
        }
    }
    return r;
}

// --- polynomial annihilation and leading term ------------------------------

SuiteResult run_annihilation(const CampaignConfig& cfg) {
    SuiteResult r{"annihilation"};
    const std::size_t sid = suite_index(r.name);
    for (int n = 0; n <= 6; ++n) {
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(derive_seed(cfg.seed, sid, static_cast<std::uint64_t>(n) * 1000003 + trial));
            std::vector<Rational> coeffs;
            for (int i = 0; i < n; ++i) coeffs.push_back(rng.next_rational(100, 100));
            coeffs.push_back(rng.next_nonzero_rational(100, 100));
            PolynomialFn<Rational> f(coeffs);
            Rational h = rng.next_nonzero_rational(100, 100);
            Rational x = rng.next_rational(100, 100);

            Rational annihilated = equal_step_difference(f, h, n + 1, x);
            record(r, annihilated.is_zero(), [&] {
                return Json{{"check", "annihilation"}, {"degree", n}, {"x", x.str()},
                            {"h", h.str()}, {"value", annihilated.str()}};
            });

            if (n >= 1) {
                // Delta_{h_1..h_n} x^n = n! h_1...h_n
                std::vector<Rational> mono(n + 1, Rational(0));
                mono.back() = Rational(1);
                PolynomialFn<Rational> xn(mono);
                auto steps = random_steps(rng, n, 50, 50);
                Rational got = mixed_difference(xn, std::span<const Rational>(steps), x);
                Rational want(factorial(n));
                for (const auto& hh : steps) want *= hh;
                record(r, got == want, [&] {
                    return Json{{"check", "leading-term"}, {"degree", n}, {"x", x.str()},
                                {"steps", steps_json(steps)}, {"got", got.str()},
                                {"want", want.str()}};
                });
                if (n <= 4) {
                    Rational rec = mixed_difference_recursive(xn, std::span<const Rational>(steps), x);
                    record(r, rec == got, [&] {
                        return Json{{"check", "recursion-cross-check"}, {"degree", n},
                                    {"subset", got.str()}, {"recursive", rec.str()}};
                    });
                }
            }
        }
    }
    return r;
}

// --- valuation arithmetic and the ultrametric equality ---------------------

SuiteResult run_ultrametric(const CampaignConfig& cfg) {
    SuiteResult r{"ultrametric"};
    const std::size_t sid = suite_index(r.name);
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng(derive_seed(cfg.seed, sid, trial));
        PAdicContext ctx(pick_prime(cfg, rng));
        Rational x = rng.next_nonzero_rational(100000, 100000);
        Rational y = rng.next_nonzero_rational(100000, 100000);
        long vx = valuation(x, ctx).value();
        long vy = valuation(y, ctx).value();
        long vxy = valuation(x * y, ctx).value();
        bool ok = vxy == vx + vy;

        Valuation vsum = valuation(x + y, ctx);
        long lower = std::min(vx, vy);
        ok = ok && (vsum.is_infinite() || vsum.value() >= lower);
        if (vx != vy) {
            ok = ok && !vsum.is_infinite() && vsum.value() == lower;
            auto rep = ultrametric_dominance(x, y, ctx);
            ok = ok && rep.equality_holds;
        }
        record(r, ok, [&] {
            return Json{{"p", ctx.prime}, {"x", x.str()}, {"y", y.str()},
                        {"v(x)", vx}, {"v(y)", vy},
                        {"v(x+y)", vsum.str()}, {"v(xy)", vxy}};
        });
    }
    return r;
}

// --- digit expansions round-trip -------------------------------------------

SuiteResult run_digits(const CampaignConfig& cfg) {
    SuiteResult r{"digits"};
    const std::size_t sid = suite_index(r.name);
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng(derive_seed(cfg.seed, sid, trial));
        unsigned p = pick_prime(cfg, rng);
        unsigned K = 1 + static_cast<unsigned>(rng.next() % 12);
        PAdicContext ctx(p, K);
        Rational x = rng.next_nonzero_rational(100000, 100000);
        auto view = digit_expansion(x, ctx);
        long m = view.valuation.value();
        Rational partial(0);
        for (unsigned k = 0; k < K; ++k)
            partial += Rational(Int(view.digits[k])) * pow_rational(Int(p), m + static_cast<long>(k));
        Valuation verr = valuation(x - partial, ctx);
        bool ok = view.digits.size() == K && view.digits[0] >= 1 &&
                  (verr.is_infinite() || verr.value() >= m + static_cast<long>(K));
        record(r, ok, [&] {
            return Json{{"p", p}, {"K", K}, {"x", x.str()}, {"rendered", view.render(ctx)},
                        {"residual_valuation", verr.str()}};
        });
    }
    return r;
}

// --- real order-1 extension certificates -----------------------------------

SuiteResult run_extend_real(const CampaignConfig& cfg) {
    SuiteResult r{"extend-real"};
    const std::size_t sid = suite_index(r.name);
    long total_instances = 0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng(derive_seed(cfg.seed, sid, trial));
        Rational a = rng.next_rational(50, 20);
        Rational width(Int(1 + rng.next_in(0, 8)), Int(2));
        RealOpenInterval I(a, a + width);
        Rational x = rng.next_rational(1000, 100);
        Rational h = rng.next_nonzero_rational(50, 10);

        auto cert = real_order1_certificate(x, h, I);
        MixedHypothesis hyp{{StepDomain(I)}};
        auto verdict = verify_certificate(cert, hyp);

        std::size_t expected = I.contains(h)
            ? 1
            : static_cast<std::size_t>(2 * ((Rational(2) * h.abs() / I.width()).floor() + 1));
        bool ok = verdict.accepted && cert.instances.size() == expected;

        // the certificate identity must hold for arbitrary functions
        for (int j = 0; ok && j < 5; ++j) {
            TabulatedFn<Rational> f(rng.next());
            ok = cert.apply_instances(f) == cert.target.apply(f);
        }
        total_instances += static_cast<long>(cert.instances.size());
        record(r, ok, [&] {
            return Json{{"x", x.str()}, {"h", h.str()},
                        {"interval", Json::array({I.lo.str(), I.hi.str()})},
                        {"instances", cert.instances.size()}, {"expected", expected},
                        {"diagnostics", verdict.diagnostics}};
        });
    }
    r.stats["total_instances"] = total_instances;
    return r;
}

// --- p-adic order-1 extension certificates ---------------------------------

SuiteResult run_extend_padic(const CampaignConfig& cfg) {
    SuiteResult r{"extend-padic"};
    const std::size_t sid = suite_index(r.name);
    long telescoped = 0;
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng(derive_seed(cfg.seed, sid, trial));
        PAdicContext ctx(pick_prime(cfg, rng));
        Rational center = (rng.next() % 3 == 0) ? Rational(0) : rng.next_rational(50, 50);
        long N = static_cast<long>(rng.next_in(-3, 3));
        PAdicBallComplement D(center, N, ctx);
        Rational x = rng.next_rational(100, 100);
        Rational h = rng.next_nonzero_rational(200, 200);

        auto cert = padic_order1_certificate(x, h, D);
        MixedHypothesis hyp{{StepDomain(D)}};
        auto verdict = verify_certificate(cert, hyp);
        bool ok = verdict.accepted &&
                  cert.instances.size() == (D.contains(h) ? std::size_t{1} : std::size_t{2});

        TabulatedFn<Rational> f(rng.next());
        ok = ok && cert.apply_instances(f) == cert.target.apply(f);

        // telescoping variant must agree where its budget allows
        for (int m = 0; m <= 8; ++m) {
            Int length = boost::multiprecision::pow(Int(ctx.prime), static_cast<unsigned>(m));
            if (length > cfg.budgets.max_telescope_length) break;
            if (!D.contains(h / Rational(length))) continue;
            auto tele = telescoping_padic_certificate(x, h, D, m, cfg.budgets.max_telescope_length);
            auto tv = verify_certificate(tele, hyp);
            ok = ok && tv.accepted && tele.target == cert.target &&
                 tele.apply_instances(f) == cert.apply_instances(f);
            ++telescoped;
            break;
        }
        record(r, ok, [&] {
            return Json{{"p", ctx.prime}, {"center", center.str()}, {"N", N},
                        {"x", x.str()}, {"h", h.str()},
                        {"instances", cert.instances.size()},
                        {"diagnostics", verdict.diagnostics}};
        });
    }
    r.stats["telescoping_agreements"] = telescoped;
    return r;
}

// --- equal-step extension --------------------------------------------------

SuiteResult run_equal_step(const CampaignConfig& cfg) {
    SuiteResult r{"equal-step"};
    const std::size_t sid = suite_index(r.name);
    for (int s : cfg.orders) {
        if (s > 3) continue;
        for (int trial = 0; trial < cfg.trials; ++trial) {
            Rng rng(derive_seed(cfg.seed, sid, static_cast<std::uint64_t>(s) * 1000003 + trial));
            Rational delta = rng.next_nonzero_rational(10, 5).abs();
            std::vector<Rational> steps;
            for (int i = 0; i < s; ++i)
                steps.push_back(rng.next_nonzero_rational(4, 4) * delta / Rational(8));
            Rational x = rng.next_rational(100, 20);
            Side side = (rng.next() % 2 == 0) ? Side::positive : Side::negative;

            ExtensionCertificate cert;
            std::string error;
            bool ok = true;
            try {
                cert = equal_step_extension_certificate(x, steps, delta, side,
                                                        cfg.budgets.max_certificate_instances);
            } catch (const std::exception& e) {
                ok = false;
                error = e.what();
            }
            Verdict verdict;
            if (ok) {
                RealOpenInterval I = side == Side::positive
                                         ? RealOpenInterval(Rational(0), delta)
                                         : RealOpenInterval(-delta, Rational(0));
                verdict = verify_certificate(cert, HypothesisDomain(EqualStepHypothesis{I, s}));
                ok = verdict.accepted;
                for (int j = 0; ok && j < 3; ++j) {
                    TabulatedFn<Rational> f(rng.next());
                    ok = cert.apply_instances(f) == cert.target.apply(f);
                }
            }
            record(r, ok, [&] {
                return Json{{"order", s}, {"delta", delta.str()}, {"x", x.str()},
                            {"steps", steps_json(steps)},
                            {"side", side == Side::positive ? "pos" : "neg"},
                            {"error", error}, {"diagnostics", verdict.diagnostics}};
            });
        }
    }
    return r;
}

// --- interpolation propagation ---------------------------------------------

SuiteResult run_interpolation(const CampaignConfig& cfg) {
    SuiteResult r{"interpolation"};
    const std::size_t sid = suite_index(r.name);
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng(derive_seed(cfg.seed, sid, trial));
        PAdicContext ctx(pick_prime(cfg, rng));
        int n = static_cast<int>(rng.next_in(0, 5));
        std::vector<Rational> coeffs;
        for (int i = 0; i < n; ++i) coeffs.push_back(rng.next_rational(100, 100));
        coeffs.push_back(rng.next_nonzero_rational(100, 100));
        PolynomialFn<Rational> f(coeffs);
        Rational x0 = rng.next_rational(100, 100);
        Rational h0 = rng.next_nonzero_rational(100, 100);

        auto prop = propagation_check(f, x0, h0, n, -20, 20);
        bool ok = prop.ok;
        for (int m = 0; m <= 3 && ok; ++m) {
            auto ref = refinement_consistency(f, x0, h0, n, m, ctx);
            ok = ref.ok && ref.coarse_coefficients == ref.fine_coefficients;
        }
        record(r, ok, [&] {
            return Json{{"degree", n}, {"x0", x0.str()}, {"h0", h0.str()},
                        {"p", ctx.prime}, {"report", to_json(prop)}};
        });

        // negative control: a ball-crossing configuration must be flagged
        BallIndicatorFn phi(Rational(0), 0, ctx);
        Rational bad_step = Rational(Int(1), Int(ctx.prime));
        auto neg = propagation_check(phi, Rational(0), bad_step, 0, 0, 1);
        record(r, !neg.ok && !neg.violations.empty(), [&] {
            return Json{{"check", "negative-control"}, {"p", ctx.prime},
                        {"report", to_json(neg)}};
        });
        auto negref = refinement_consistency(phi, Rational(0), Rational(1), 0, 1, ctx);
        record(r, !negref.ok && !negref.violations.empty(), [&] {
            return Json{{"check", "negative-control-refinement"}, {"p", ctx.prime},
                        {"report", to_json(negref)}};
        });
    }
    return r;
}

// --- counterexamples: indicator jump, indicator flatness, class-piecewise --

SuiteResult run_counterexamples(const CampaignConfig& cfg) {
    SuiteResult r{"counterexamples"};
    const std::size_t sid = suite_index(r.name);
    unsigned p = cfg.prime.value_or(3);
    PAdicContext ctx(p);
    BallIndicatorFn phi(Rational(0), 0, ctx);

    // the indicator of Z_p jumps under the step 1/p at 0
    Rational jump = forward_difference(phi, Rational(Int(1), Int(p)), Rational(0));
    record(r, jump == Rational(-1), [&] {
        return Json{{"check", "indicator-jump"}, {"p", p}, {"value", jump.str()}};
    });

    // flatness under steps of absolute value <= 1
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng(derive_seed(cfg.seed, sid, trial));
        Rational x = rng.next_rational(100000, 100000);
        Rational h(0);
        while (h.is_zero() || valuation(h, ctx).value() < 0) h = rng.next_rational(1000, 1000);
        auto rep = ball_indicator_local_flatness(phi, x, h);
        record(r, rep.equal, [&] {
            return Json{{"check", "indicator-flatness"}, {"p", p}, {"x", x.str()},
                        {"h", h.str()}, {"value", rep.lhs.str()}};
        });
    }

    // class-piecewise witness, recomputed from scratch
    auto w = irrational_step_witness();
    ClassPiecewiseFn cp(2);
    Quadratic value = equal_step_difference(cp, w.h, w.order, w.x);
    record(r, value == w.claimed_value && !value.is_zero(), [&] {
        return Json{{"check", "irrational-step-witness"}, {"value", value.str()},
                    {"claimed", w.claimed_value.str()}};
    });
    for (const Rational& nx : {Rational(1), Rational(0)}) {
        Quadratic nonwit = equal_step_difference(cp, w.h, w.order, Quadratic(nx));
        record(r, nonwit.is_zero(), [&] {
            return Json{{"check", "non-witness"}, {"x", nx.str()}, {"value", nonwit.str()}};
        });
    }

    // rational steps keep the third mixed difference at zero
    for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng(derive_seed(cfg.seed, sid, 1000000 + trial));
        std::vector<Quadratic> steps;
        for (int i = 0; i < 3; ++i)
            steps.push_back(Quadratic(rng.next_nonzero_rational(1000, 1000)));
        Quadratic x(rng.next_rational(1000, 1000), rng.next_rational(1000, 1000), 2);
        auto rep = rational_step_vanishing_check(std::span<const Quadratic>(steps), x);
        record(r, rep.equal, [&] {
            return Json{{"check", "rational-step-vanishing"}, {"x", x.str()},
                        {"value", rep.lhs.str()}};
        });
    }
    return r;
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "identity3",  "permutation",  "reflection", "annihilation",
        "ultrametric", "digits",       "extend-real", "extend-padic",
        "equal-step", "interpolation", "counterexamples"};
    return names;
}

void CampaignConfig::validate() const {
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (orders.empty()) throw ConfigError("orders must be nonempty");
    for (int s : orders)
        if (s < 1 || s > 6) throw ConfigError("orders must lie in {1..6}");
    if (prime && !is_prime(*prime)) throw ConfigError("prime option is not prime");
    for (const auto& s : suites)
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw ConfigError("unknown suite: " + s);
    if (budgets.max_certificate_instances < 1 || budgets.max_telescope_length < 1)
        throw ConfigError("budgets must be positive");
}

CampaignConfig CampaignConfig::from_json(const Json& j) {
    CampaignConfig cfg;
    try {
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
        if (j.contains("orders")) cfg.orders = j.at("orders").get<std::vector<int>>();
        if (j.contains("prime")) cfg.prime = j.at("prime").get<unsigned>();
        if (j.contains("suites")) cfg.suites = j.at("suites").get<std::vector<std::string>>();
        if (j.contains("budgets")) {
            const auto& b = j.at("budgets");
            if (b.contains("max_certificate_instances"))
                cfg.budgets.max_certificate_instances =
                    b.at("max_certificate_instances").get<std::size_t>();
            if (b.contains("max_telescope_length"))
                cfg.budgets.max_telescope_length = b.at("max_telescope_length").get<long>();
        }
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

Json CampaignConfig::to_json() const {
    Json j{{"seed", seed},
           {"trials", trials},
           {"orders", orders},
           {"suites", suites},
           {"budgets",
            Json{{"max_certificate_instances", budgets.max_certificate_instances},
                 {"max_telescope_length", budgets.max_telescope_length}}}};
    if (prime) j["prime"] = *prime;
    return j;
}

Json SuiteResult::to_json() const {
    return Json{{"name", name},
                {"passed", passed},
                {"failed", failed},
                {"failures", failures},
                {"stats", stats}};
}

SuiteResult run_suite(const std::string& name, const CampaignConfig& config) {
    config.validate();
    if (name == "identity3") return run_identity3(config);
    if (name == "permutation") return run_permutation(config);
    if (name == "reflection") return run_reflection(config);
    if (name == "annihilation") return run_annihilation(config);
    if (name == "ultrametric") return run_ultrametric(config);
    if (name == "digits") return run_digits(config);
    if (name == "extend-real") return run_extend_real(config);
    if (name == "extend-padic") return run_extend_padic(config);
    if (name == "equal-step") return run_equal_step(config);
    if (name == "interpolation") return run_interpolation(config);
    if (name == "counterexamples") return run_counterexamples(config);
    throw ConfigError("unknown suite: " + name);
}

Json run_campaign(const CampaignConfig& config) {
    config.validate();
    Json suites = Json::object();
    Json timings = Json::object();
    bool ok = true;
    auto t_start = std::chrono::steady_clock::now();
    for (const auto& name : suite_names()) {
        if (!config.suites.empty() &&
            std::find(config.suites.begin(), config.suites.end(), name) == config.suites.end())
            continue;
        auto t0 = std::chrono::steady_clock::now();
        SuiteResult r = run_suite(name, config);
        auto t1 = std::chrono::steady_clock::now();
        suites[name] = r.to_json();
        timings[name] =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        ok = ok && r.ok();
    }
    auto t_end = std::chrono::steady_clock::now();
    timings["total"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t_end - t_start).count();
    return Json{{"config", config.to_json()}, {"suites", suites}, {"ok", ok},
                {"timings", timings}};
}

} // namespace feq
