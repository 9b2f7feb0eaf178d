#pragma once

#include <array>

#include "diracstep/types.hpp"

// Brute-force oracle path: explicit 4-component bi-spinors, a direct dense
// solve of the boundary-matching system, 4x4 density matrices, partial
// traces and operator expectations. Everything here is deliberately
// independent of the closed-form layer so the two can check each other.

namespace diracstep {

// Plane-wave bi-spinor in the fixed parity (x) spin ordering
//   (P=+1, up), (P=+1, down), (P=-1, up), (P=-1, down)
// where P = diag(+1,+1,-1,-1) is the parity operator. The leading block
// carries the mass-enhanced weight sqrt((E+m)/(E-m)) relative to the
// trailing one.
struct BiSpinor {
    std::array<cplx, 4> c{};

    double norm_sq() const {
        return std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]) +
               std::norm(c[3]);
    }
    // (leading block, trailing block) populations, unnormalized.
    std::array<double, 2> block_norms_sq() const {
        return {std::norm(c[0]) + std::norm(c[1]),
                std::norm(c[2]) + std::norm(c[3])};
    }
};

struct DensityMatrix {
    std::array<std::array<cplx, 4>, 4> m{};
};

struct ReducedDensity {
    std::array<std::array<cplx, 2>, 2> m{};
    Subsystem subsystem = Subsystem::Parity;
};

// Helicity eigenstate of energy E = 1 - nu_effective and mass mu moving
// along the direction with phase factor e^{i alpha}:
//   psi_+- = N (c, +-c e^{ia}, +-1, e^{ia}),
//   N = sqrt((E - mu)/(4E)), c = q/(E - mu), q = sqrt(E^2 - mu^2),
// with principal complex square roots throughout. For evanescent media the
// same expression is the complex-momentum continuation: pass the complex
// unit phase built from the refraction result. Throws
// DegenerateTransmission when E = 0 or E = mu (normalization singular).
BiSpinor build_state(double mu, double nu_effective, cplx phase_factor,
                     Helicity h);
// Convenience overload for a real direction angle (radians; reflected
// waves use pi - theta).
BiSpinor build_state(double mu, double nu_effective, double theta,
                     Helicity h);

// Superpositions of the two helicity states for each wave, evaluated at
// the interface x = 0 (plane-wave factors are unity there).
BiSpinor incident_wave(double mu, double sin_theta,
                       const IncidentAmplitudes& inc);
BiSpinor reflected_wave(double mu, double sin_theta,
                        const ScatteredAmplitudes& amps);
BiSpinor transmitted_wave(double mu, double nu, double sin_theta,
                          const ScatteredAmplitudes& amps);

// Solves the four continuity relations at x = 0 for (R+, R-, T+, T-)
// with a dense partially-pivoted LU. Throws SingularSystem if the matrix
// condition number exceeds 1e12 (reported, not regularized) and
// DegenerateTransmission when q = 0.
ScatteredAmplitudes boundary_solve(double mu, double nu, double sin_theta,
                                   const IncidentAmplitudes& inc);

// Max component mismatch between region-A and region-B superpositions at
// x = 0; near zero iff the amplitudes solve the boundary conditions.
double boundary_residual(double mu, double nu, double sin_theta,
                         const IncidentAmplitudes& inc,
                         const ScatteredAmplitudes& amps);

// rho = psi psi^dag / |psi|^2. Throws ZeroState on the null vector.
DensityMatrix density_matrix(const BiSpinor& state);

// Standard 2x2 partial trace in the BiSpinor ordering.
ReducedDensity partial_trace(const DensityMatrix& rho, Subsystem keep);

// Eigenvalues of a 2x2 Hermitian matrix, descending.
std::array<double, 2> reduced_eigenvalues(const ReducedDensity& red);

// <psi| sigma_x (x) I |psi> / <psi|psi>: chirality of the state (the
// block-swap operator in the fixed ordering). Throws ZeroState.
double gamma5_expectation(const BiSpinor& state);

// <psi| sigma_x (x) sigma_x |psi>: x-component of the probability current
// (unnormalized). Real by Hermiticity.
double current_x(const BiSpinor& state);

}  // namespace diracstep
