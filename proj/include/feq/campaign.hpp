#pragma once

// Deterministic verification campaigns. Every suite draws its randomness
// from a seed derived from (campaign seed, suite, trial), so identical
// configs reproduce identical failure payloads and certificate bodies;
// wall-clock timings are the only nondeterministic report fields and live
// in their own section.

#include "feq/json_io.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace feq {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Budgets {
    std::size_t max_certificate_instances = 100000;
    long max_telescope_length = 4096;
};

struct CampaignConfig {
    std::uint64_t seed = 1;
    int trials = 50;
    std::vector<int> orders = {1, 2, 3, 4, 5};
    std::optional<unsigned> prime;
    std::vector<std::string> suites;  // empty = all suites
    Budgets budgets;

    void validate() const;
    static CampaignConfig from_json(const Json& j);
    Json to_json() const;
};

// Canonical suite order; campaign reports follow it.
const std::vector<std::string>& suite_names();

struct SuiteResult {
    std::string name;
    long passed = 0;
    long failed = 0;
    Json failures = Json::array();  // first few failure payloads
    Json stats = Json::object();

    Json to_json() const;
    bool ok() const { return failed == 0; }
};

SuiteResult run_suite(const std::string& name, const CampaignConfig& config);

// Full report: {"config", "suites", "ok", "timings"}.
Json run_campaign(const CampaignConfig& config);

} // namespace feq
