#pragma once

#include <complex>
#include <random>

#include "diracstep/types.hpp"

namespace testsupport {

// Deterministic uniform source with a pinned engine; the bits-to-double map
// avoids the standard distributions, whose output is not pinned.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long seed) : gen(seed) {}
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    bool flip() { return (gen() & 1UL) != 0UL; }
};

inline double cdist(diracstep::cplx a, diracstep::cplx b) {
    return std::abs(a - b);
}

// Random normalized incident pair with independent phases.
inline diracstep::IncidentAmplitudes random_incident(Rng& rng) {
    const double mp = rng.uniform(0.05, 0.95);
    const double mm = std::sqrt(1.0 - mp * mp);
    diracstep::IncidentAmplitudes inc;
    inc.i_plus = std::polar(mp, rng.uniform(-3.14159265358979, 3.14159265358979));
    inc.i_minus = std::polar(mm, rng.uniform(-3.14159265358979, 3.14159265358979));
    return inc;
}

}  // namespace testsupport
