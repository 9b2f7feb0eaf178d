#pragma once

#include <stdexcept>
#include <string>

namespace diracstep {

// Base class for every domain error thrown by the library. Messages carry
// the offending parameter values so failures surface with context.
struct DiracError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// (1 - nu)^2 = mu^2: the transmitted momentum q vanishes and every
// region-B formula degenerates.
struct DegenerateTransmission : DiracError {
    using DiracError::DiracError;
};

// theta = pi/2: the incident normal velocity is zero, flux ratios are
// undefined.
struct NormalFluxZero : DiracError {
    using DiracError::DiracError;
};

// The denominator of the closed-form amplitude map vanished.
struct SingularDenominator : DiracError {
    using DiracError::DiracError;
};

// The 4x4 boundary-matching system is numerically singular
// (condition number above 1e12). Reported, never regularized.
struct SingularSystem : DiracError {
    using DiracError::DiracError;
};

// A density matrix was requested for the null state.
struct ZeroState : DiracError {
    using DiracError::DiracError;
};

// Both amplitudes of a reduced spectrum are zero.
struct ZeroAmplitudes : DiracError {
    using DiracError::DiracError;
};

// The closed-form transmitted kappa factor is not real: the wave is
// evanescent and its entanglement entropy is undefined.
struct EvanescentKappa : DiracError {
    using DiracError::DiracError;
};

// A closed form valid only for relatively-real amplitudes was called with
// phased input.
struct PreconditionPhase : DiracError {
    using DiracError::DiracError;
};

}  // namespace diracstep
