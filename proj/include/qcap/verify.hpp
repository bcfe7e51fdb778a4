#pragma once

// Property verification suites.  Each suite runs a set of named checks over
// seeded random samples and reports violation counts with a counterexample
// dump for the worst offender.  Sample counts can be overridden globally;
// zero keeps the per-check defaults.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qcap/parallel.hpp"

namespace qcap {

struct CheckResult {
    std::string name;
    int samples = 0;
    int violations = 0;
    double max_violation = 0.0;
    bool pass = true;
    nlohmann::ordered_json counterexample;  // null unless violations > 0
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    int samples = 0;  // requested override; 0 = defaults
    std::vector<CheckResult> checks;
    bool pass = true;
};

struct SuiteConfig {
    std::uint64_t seed = 42;
    int samples = 0;
    Exec exec = Exec::serial;
};

// Registered suite names, in execution order; excludes the "all" alias.
std::vector<std::string> suite_names();

SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

// name == "all" expands to every registered suite.
std::vector<SuiteReport> run_suites(const std::string& name_or_all, const SuiteConfig& cfg);

}  // namespace qcap
