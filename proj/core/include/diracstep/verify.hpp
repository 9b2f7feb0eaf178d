#pragma once

#include <string>
#include <vector>

namespace diracstep {

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;      // largest residual observed (check-specific meaning)
    double tolerance = 0.0;  // threshold worst was compared against
    std::string detail;      // worst-case parameters or an explanation
};

struct VerifyOptions {
    int grid_density = 200;     // theta samples per parameter cell
    unsigned long seed = 20260817UL;
    int random_samples = 1000;  // randomized trials where a check uses them
    // Debug knob: flips the sign of the transmitted flux weight inside the
    // conservation check so it must fail loudly. Never set in normal runs.
    bool corrupt_flux_sign = false;
};

// Runs the full acceptance battery in a fixed order and returns one result
// per check. Deterministic for a given options struct.
std::vector<CheckResult> run_acceptance(const VerifyOptions& opts);

bool all_passed(const std::vector<CheckResult>& checks);

// "PASS name  worst=... tol=...  detail" / "FAIL ..." one-liner.
std::string format_check_line(const CheckResult& check);

}  // namespace diracstep
