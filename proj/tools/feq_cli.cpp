// Command-line campaign runner and certificate generator. Exit codes:
// 0 all verdicts pass, 1 a verification failed, 2 configuration/usage error.

#include "feq/campaign.hpp"
#include "feq/extension.hpp"
#include "feq/gallery.hpp"
#include "feq/interpolation.hpp"
#include "feq/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <memory>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using feq::Json;
using feq::Rational;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

std::vector<Rational> parse_rationals(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& part : split(s, ',')) out.push_back(Rational::parse(part));
    return out;
}

// "poly:c0,c1,..." | "ball:center,N" | "tab:seed"
std::function<Rational(const Rational&)> parse_function(const std::string& spec, unsigned prime,
                                                        Json& described) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string payload = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "poly") {
        auto coeffs = parse_rationals(payload);
        described = Json{{"variant", "polynomial"}, {"coefficients", feq::to_json(coeffs)}};
        return [f = feq::PolynomialFn<Rational>(coeffs)](const Rational& x) { return f(x); };
    }
    if (kind == "ball") {
        auto parts = split(payload, ',');
        if (parts.size() != 2) throw feq::ConfigError("ball function needs center,exponent");
        Rational center = Rational::parse(parts[0]);
        long N = std::stol(parts[1]);
        described = Json{{"variant", "ball-indicator"}, {"center", center.str()},
                         {"exponent", N}, {"p", prime}};
        return [f = feq::BallIndicatorFn(center, N, feq::PAdicContext(prime))](const Rational& x) {
            return f(x);
        };
    }
    if (kind == "tab") {
        std::uint64_t seed = std::stoull(payload);
        described = Json{{"variant", "tabulated"}, {"seed", seed}};
        auto f = std::make_shared<feq::TabulatedFn<Rational>>(seed);
        return [f](const Rational& x) { return (*f)(x); };
    }
    throw feq::ConfigError("unknown function spec: " + spec);
}

void emit(const Json& report, const std::string& path) {
    if (path.empty()) {
        std::cout << report.dump(2) << "\n";
    } else {
        std::ofstream out(path);
        if (!out) throw feq::ConfigError("cannot write report to " + path);
        out << report.dump(2) << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact finite-difference calculus and step-domain extension certificates"};
    app.require_subcommand(1);

    std::string report_path;
    app.add_option("--report", report_path, "write the JSON report to this path")->capture_default_str();

    // verify <suite>
    auto* verify = app.add_subcommand("verify", "run one verification suite");
    std::string suite;
    verify->add_option("suite", suite, "suite name")->required();
    std::uint64_t seed = 1;
    int trials = 50;
    std::vector<int> orders;
    unsigned prime = 0;
    verify->add_option("--seed", seed);
    verify->add_option("--trials", trials);
    verify->add_option("--order", orders);
    verify->add_option("--prime", prime);

    // extend-real
    auto* exreal = app.add_subcommand("extend-real", "real-interval extension certificate");
    std::string x_str = "0", h_str, interval_str;
    int order = 1;
    exreal->set_help_flag("--help", "print help");  // frees -h for the step option
    exreal->add_option("--x", x_str);
    exreal->add_option("--h", h_str, "target step, or comma list for --order > 1")->required();
    exreal->add_option("--interval", interval_str, "a,b")->required();
    exreal->add_option("--order", order);

    // extend-padic
    auto* expadic = app.add_subcommand("extend-padic", "p-adic ball-complement extension certificate");
    std::string px_str = "0", ph_str, center_str = "0";
    unsigned pprime = 3;
    long exponent = 0;
    int telescope = -1;
    expadic->set_help_flag("--help", "print help");  // frees -h for the step option
    expadic->add_option("--prime", pprime)->required();
    expadic->add_option("--x", px_str);
    expadic->add_option("--h", ph_str)->required();
    expadic->add_option("--center", center_str);
    expadic->add_option("--exponent", exponent);
    expadic->add_option("--telescope", telescope, "use the telescoping chain with this exponent");

    // equal-step
    auto* eqstep = app.add_subcommand("equal-step", "equal-step extension certificate");
    std::string delta_str, steps_str, side_str = "pos", ex_str = "0";
    int eq_order = 2;
    eqstep->add_option("--delta", delta_str)->required();
    eqstep->add_option("--order", eq_order);
    eqstep->add_option("--side", side_str)->check(CLI::IsMember({"neg", "pos"}));
    eqstep->add_option("--steps", steps_str, "h1,...")->required();
    eqstep->add_option("--x", ex_str);

    // interpolate
    auto* interp = app.add_subcommand("interpolate", "interpolation propagation check");
    std::string ix0 = "0", ih0, krange = "-20,20", fn_spec = "ball:0,0";
    unsigned iprime = 3;
    int degree = 0, refine = -1;
    interp->add_option("--prime", iprime)->required();
    interp->add_option("--x0", ix0);
    interp->add_option("--h0", ih0)->required();
    interp->add_option("--degree", degree);
    interp->add_option("--krange", krange, "lo,hi");
    interp->add_option("--refine", refine, "also check refinement with this exponent");
    interp->add_option("--function", fn_spec, "poly:c0,c1,... | ball:center,N | tab:seed");

    // campaign
    auto* camp = app.add_subcommand("campaign", "run the full campaign");
    std::string config_path;
    std::uint64_t c_seed = 0;
    int c_trials = 0;
    std::vector<int> c_orders;
    unsigned c_prime = 0;
    std::vector<std::string> c_suites;
    camp->add_option("--config", config_path, "JSON config file");
    camp->add_option("--seed", c_seed);
    camp->add_option("--trials", c_trials);
    camp->add_option("--order", c_orders);
    camp->add_option("--prime", c_prime);
    camp->add_option("--suite", c_suites);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*verify) {
            feq::CampaignConfig cfg;
            cfg.seed = seed;
            cfg.trials = trials;
            if (!orders.empty()) cfg.orders = orders;
            if (prime != 0) cfg.prime = prime;
            auto result = feq::run_suite(suite, cfg);
            emit(Json{{"config", cfg.to_json()}, {"suite", result.to_json()}}, report_path);
            return result.ok() ? 0 : 1;
        }

        if (*exreal) {
            auto bounds = parse_rationals(interval_str);
            if (bounds.size() != 2) throw feq::ConfigError("--interval needs a,b");
            feq::RealOpenInterval I(bounds[0], bounds[1]);
            Rational x = Rational::parse(x_str);
            auto steps = parse_rationals(h_str);
            if (order < 1) throw feq::ConfigError("--order must be >= 1");
            while (static_cast<int>(steps.size()) < order) steps.push_back(steps.back());
            if (static_cast<int>(steps.size()) != order)
                throw feq::ConfigError("--h count does not match --order");
            feq::MixedHypothesis hyp;
            hyp.factors.assign(order, feq::StepDomain(I));
            auto cert = feq::mixed_extension_certificate(x, steps, hyp);
            auto verdict = feq::verify_certificate(cert, hyp);
            emit(Json{{"certificate", feq::to_json(cert)},
                      {"accepted", verdict.accepted},
                      {"diagnostics", verdict.diagnostics}},
                 report_path);
            return verdict.accepted ? 0 : 1;
        }

        if (*expadic) {
            feq::PAdicContext ctx(pprime);
            feq::PAdicBallComplement D(Rational::parse(center_str), exponent, ctx);
            Rational x = Rational::parse(px_str);
            Rational h = Rational::parse(ph_str);
            auto cert = telescope >= 0 ? feq::telescoping_padic_certificate(x, h, D, telescope)
                                       : feq::padic_order1_certificate(x, h, D);
            feq::MixedHypothesis hyp{{feq::StepDomain(D)}};
            auto verdict = feq::verify_certificate(cert, hyp);
            emit(Json{{"certificate", feq::to_json(cert)},
                      {"accepted", verdict.accepted},
                      {"diagnostics", verdict.diagnostics}},
                 report_path);
            return verdict.accepted ? 0 : 1;
        }

        if (*eqstep) {
            Rational delta = Rational::parse(delta_str);
            auto steps = parse_rationals(steps_str);
            if (static_cast<int>(steps.size()) != eq_order)
                throw feq::ConfigError("--steps count does not match --order");
            feq::Side side = side_str == "pos" ? feq::Side::positive : feq::Side::negative;
            auto cert = feq::equal_step_extension_certificate(Rational::parse(ex_str), steps,
                                                              delta, side);
            feq::RealOpenInterval I = side == feq::Side::positive
                                          ? feq::RealOpenInterval(Rational(0), delta)
                                          : feq::RealOpenInterval(-delta, Rational(0));
            auto verdict = feq::verify_certificate(
                cert, feq::HypothesisDomain(feq::EqualStepHypothesis{I, eq_order}));
            emit(Json{{"certificate", feq::to_json(cert)},
                      {"accepted", verdict.accepted},
                      {"diagnostics", verdict.diagnostics}},
                 report_path);
            return verdict.accepted ? 0 : 1;
        }

        if (*interp) {
            auto kr = split(krange, ',');
            if (kr.size() != 2) throw feq::ConfigError("--krange needs lo,hi");
            long k_lo = std::stol(kr[0]), k_hi = std::stol(kr[1]);
            Json described;
            auto f = parse_function(fn_spec, iprime, described);
            auto prop = feq::propagation_check(f, Rational::parse(ix0), Rational::parse(ih0),
                                               degree, k_lo, k_hi);
            Json out{{"function", described}, {"propagation", feq::to_json(prop)}};
            bool ok = prop.ok;
            if (refine >= 0) {
                auto ref = feq::refinement_consistency(f, Rational::parse(ix0),
                                                       Rational::parse(ih0), degree, refine,
                                                       feq::PAdicContext(iprime));
                out["refinement"] = feq::to_json(ref);
                ok = ok && ref.ok;
            }
            emit(out, report_path);
            return ok ? 0 : 1;
        }

        if (*camp) {
            Json base = Json::object();
            if (!config_path.empty()) {
                std::ifstream in(config_path);
                if (!in) throw feq::ConfigError("cannot read config: " + config_path);
                in >> base;
            }
            // command line wins over the file
            if (camp->count("--seed")) base["seed"] = c_seed;
            if (camp->count("--trials")) base["trials"] = c_trials;
            if (camp->count("--order")) base["orders"] = c_orders;
            if (camp->count("--prime")) base["prime"] = c_prime;
            if (camp->count("--suite")) base["suites"] = c_suites;
            auto cfg = feq::CampaignConfig::from_json(base);
            Json report = feq::run_campaign(cfg);
            emit(report, report_path);
            return report.at("ok").get<bool>() ? 0 : 1;
        }
    } catch (const feq::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
