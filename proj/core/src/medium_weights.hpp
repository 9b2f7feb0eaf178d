#pragma once

#include <sstream>

#include "diracstep/errors.hpp"
#include "diracstep/types.hpp"

namespace diracstep::detail {

struct MediumWeights {
    cplx n;  // overall normalization sqrt((E-m)/4E)
    cplx c;  // upper-to-lower block weight q/(E-m), signed/complex
};

// Principal-branch spinor weights for a medium of total energy E and mass m
// (dimensionless units, E = 1 - nu). Valid in every zone: q and both weights
// continue smoothly into the complex plane. Throws DegenerateTransmission at
// E = 0 or E = m where the normalization is singular.
inline MediumWeights medium_weights(double E, double m) {
    if (E == 0.0 || E == m) {
        std::ostringstream os;
        os.precision(17);
        os << "degenerate medium: E = " << E << ", m = " << m;
        throw DegenerateTransmission(os.str());
    }
    const cplx q = std::sqrt(cplx(E * E - m * m));
    return {std::sqrt(cplx((E - m) / (4.0 * E))), q / (E - m)};
}

}  // namespace diracstep::detail
