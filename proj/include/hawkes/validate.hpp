#pragma once

#include <string>
#include <vector>

namespace hawkes {

struct CheckResult {
    std::string name;
    double observed = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct ValidateOptions {
    bool quick = false;            // reduced mesh / run counts, same checks
    bool negative_control = false; // run the mis-signed transform hook check
    std::uint64_t seed = 20240901;
};

/// The full acceptance suite; one result per check, suite keeps going past
/// failures.
std::vector<CheckResult> run_acceptance(const ValidateOptions& opts = {});

/// One pass/fail line per check, plus a trailing summary; returns the number
/// of failures.
int print_report(const std::vector<CheckResult>& results);

} // namespace hawkes
