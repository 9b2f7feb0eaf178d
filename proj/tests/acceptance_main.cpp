// Standalone acceptance gate: runs the full verification battery at its
// reference density and prints one line per criterion. Exits nonzero when
// any criterion is red so CI surfaces the state honestly.
//
// One criterion is red by design: "reflected-entropy-kink" demands a jump
// in dS_R/d(sin theta) at the critical angle, but the reflected entropy is
// differentiable there (measured slope ratio 1.0; the genuine cusp sits in
// the transmitted entropy instead). The check is kept as stated rather than
// weakened to match the code. Details are in the check's output line and in
// the project README.

#include <cstdio>

#include "diracstep/verify.hpp"

int main() {
    const diracstep::VerifyOptions opts;  // reference density and seed
    const auto results = diracstep::run_acceptance(opts);
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s\n", diracstep::format_check_line(r).c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%zu checks, %d failed\n", results.size(), failed);
    return failed == 0 ? 0 : 2;
}
