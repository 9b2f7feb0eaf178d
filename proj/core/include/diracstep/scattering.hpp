#pragma once

#include "diracstep/kinematics.hpp"
#include "diracstep/types.hpp"

namespace diracstep {

// Helicity-coupling parameter of the reflection map, together with the two
// complex pieces it is assembled from. In oscillatory zones both pieces are
// real, so value = cross + i*same splits cleanly into (Re, Im); past the
// critical angle the pieces go complex and carry information that Re/Im of
// value alone cannot, which is what scatter and the phase-product identity
// consume.
struct AParam {
    cplx value{};
    ZoneSide zone_side = ZoneSide::Diffusion;
    cplx same{};   // diagonal coupling: R+- picks up i*same*I+-
    cplx cross{};  // off-diagonal coupling: R+- picks up -cross*I-+
};

// A from (mu, incidence, critical angle, barrier side); the critical angle
// fixes the step height through nu = 1 -/+ sqrt(mu^2 + (1-mu^2) sin^2 t_c).
// Throws SingularDenominator when the closed-form denominator vanishes
// (measure-zero set) and DegenerateTransmission when the recovered medium
// is degenerate (q = 0, or zero effective energy).
AParam compute_A(double mu, double sin_theta, double sin_theta_c,
                 ZoneSide side);

// Same computation with sin^2 theta_c passed directly. Accepts any real
// value (negative means no oscillatory transmission at any angle), which
// reaches media no real critical angle can express; the closed form contains
// only even powers of sin theta_c so this is well defined. Throws
// std::domain_error when mu^2 + (1-mu^2)*critical_sine_sq < 0.
AParam compute_A_from_critical_sq(double mu, double sin_theta,
                                  double critical_sine_sq, ZoneSide side);

// Convenience: A for an explicit medium; the side follows sign(1 - nu).
AParam compute_A_for_medium(const MediumParams& params, double sin_theta);

// Scattered amplitudes for the given incident pair:
//   R+- = e^{i theta} (i*same*I+- - cross*I-+)
// and the boundary-consistent transmission coefficients. refr must describe
// the same (mu, nu, sin_theta) the A parameter was computed for; scatter
// recomputes the coupling pieces from refr and throws std::invalid_argument
// if they disagree with the ones carried by `a`.
ScatteredAmplitudes scatter(const AParam& a, double sin_theta,
                            const RefractionResult& refr,
                            const IncidentAmplitudes& inc);

// |R+|^2 + |R-|^2 + flux_ratio*(|T+|^2 + |T-|^2) - 1, signed. Zero for
// amplitudes produced from a normalized incident pair.
double conservation_residual(const ScatteredAmplitudes& amps,
                             double flux_ratio);

// |R+|^2 |R-|^2 for I+- = |I+-| e^{+-i delta_omega/2}, evaluated through the
// four-term expansion in the coupling pieces and sin(delta_omega) instead of
// running the full map. Uses the common-phase-stripped pair
// (|same|, sign(Re(same*conj(cross)))*|cross|), which keeps the expansion
// exact in every zone. Requires mag_plus^2 + mag_minus^2 = 1 (throws
// std::invalid_argument otherwise).
double reflected_product_with_phase(const AParam& a, double mag_plus,
                                    double mag_minus, double delta_omega);

}  // namespace diracstep
