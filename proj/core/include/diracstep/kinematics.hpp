#pragma once

#include "diracstep/types.hpp"

// Zone classification, the critical angle, Snell refraction and flux
// velocities for a plane wave of energy E = 1 hitting the electrostatic
// step V(x) = V0 for x > 0. The incidence angle is measured from the step
// normal (x axis) and is carried everywhere as sin(theta) in [0, 1).

namespace diracstep {

// sin^2 of the critical angle: ((1-nu)^2 - mu^2) / (1 - mu^2).
// May be negative (evanescent at every angle) or above 1 (oscillatory at
// every angle); returned as-is, callers interpret.
double critical_sine_squared(const MediumParams& params);

// Inverse of critical_sine_squared on the chosen side of nu = 1:
// nu = 1 -+ sqrt(mu^2 + (1 - mu^2) sin^2 theta_c).
double nu_from_critical(double mu, double sin_theta_c, ZoneSide side);

// Step height described by a Barrier for the given mass ratio: the stored nu
// directly, or the one recovered from (sin_theta_c, side).
double barrier_nu(const Barrier& barrier, double mu);

// Zone of the transmitted wave for this incidence. Boundary equalities
// classify as tunneling; the amplitudes are continuous there so only the
// label is affected.
Zone classify(const MediumParams& params, double sin_theta);

// Complex refraction data for the transmitted wave.
//
// sin_theta_prime and cos_theta_prime satisfy sin^2 + cos^2 = 1 as complex
// numbers. In the shallow tunneling regime (q^2 > 0, q_x^2 < 0) the sine
// stays real above 1 and the cosine continues to +i sqrt(sin^2 - 1), the
// branch that decays for x -> +inf. In deep tunneling (q^2 < 0) the
// transverse/total ratio makes the sine purely imaginary and the cosine
// real; both fields are complex for this reason.
struct RefractionResult {
    cplx sin_theta_prime;
    cplx cos_theta_prime;
    bool evanescent = false;  // no propagating transmitted wave (q_x^2 <= 0)

    cplx q;      // transmitted momentum magnitude, principal sqrt((1-nu)^2 - mu^2)
    cplx q_x;    // normal component, +i branch when q_x^2 < 0
    double q_y;  // conserved transverse momentum p sin(theta)

    // Generating parameters, kept so downstream maps can verify that the
    // pieces they combine came from one (mu, nu, theta) triple.
    double mu = 0.0;
    double nu = 0.0;
    double sin_theta = 0.0;

    // exp(+i theta'), assembled from the stored cosine/sine (never via a
    // conjugate, which would pick the growing branch).
    cplx phase() const { return cos_theta_prime + cplx(0.0, 1.0) * sin_theta_prime; }
};

// Throws DegenerateTransmission when (1 - nu)^2 = mu^2 (q = 0).
RefractionResult refract(const MediumParams& params, double sin_theta);

// Ratio of transmitted to incident normal velocities,
//   v_qx / v_px = [cos theta' sqrt((1-nu)^2 - mu^2) / (1-nu)] / [cos theta sqrt(1-mu^2)],
// carrying the sign of (1 - nu): strictly negative in the Klein zone.
// Exactly 0 in both tunneling zones (no transmitted probability current).
// Throws NormalFluxZero at grazing incidence (sin theta = 1).
double flux_ratio(const MediumParams& params, double sin_theta);

}  // namespace diracstep
