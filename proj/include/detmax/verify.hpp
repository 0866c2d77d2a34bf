#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "detmax/io.hpp"

namespace detmax {

struct VerificationFailure {
    std::string what;
    Json counterexample;
};

struct VerificationReport {
    std::string suite;
    long trials = 0;
    std::vector<VerificationFailure> failures;
    double wall_seconds = 0.0;

    bool ok() const { return failures.empty(); }
};

Json to_json(const VerificationReport& r);

/// Known suites, in the order the acceptance run executes them first.
std::vector<std::string> suite_names();

/// Runs a named suite. trials = 0 selects the suite's own default (the
/// counts the acceptance criteria pin down). Unknown names throw
/// std::invalid_argument.
VerificationReport run_suite(const std::string& name, long trials, uint64_t seed);

}  // namespace detmax
