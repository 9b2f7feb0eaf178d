#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "diracstep/types.hpp"

namespace diracstep {

// Parity-block weight ratio of a plane wave. `value` is the conventional
// nonnegative form (Klein media use nu-1 in place of 1-nu, keeping it in
// [0,1]); `ratio_sq` is the signed ratio (1-nu-mu)/(1-nu+mu) the parity
// populations need (negative <P> in the Klein zone). The two carry the same
// information where both are defined: value^2 = |ratio_sq| or its
// reciprocal, and the reduced spectrum is invariant under that swap.
struct KappaFactor {
    double value = 0.0;
    Wave wave = Wave::Incident;
    double ratio_sq = 0.0;
};

// kappa for the given wave. Incident and reflected waves share
// sqrt((1-mu)/(1+mu)); the transmitted wave uses the stepped medium. Throws
// EvanescentKappa for a transmitted wave when the ratio is not real
// (|1 - nu| < mu: tunneling at every angle), independent of theta.
KappaFactor kappa(Wave wave, double mu, double nu);

struct ParityObservables {
    double p_odd = 0.0;      // population of the mass-enhanced block
    double p_even = 0.0;
    double avg_parity = 0.0;
};

// p_odd = 1/(1 + k^2), p_even = k^2/(1 + k^2), <P> = (1 - k^2)/(1 + k^2)
// with the signed ratio; independent of the incidence angle and of the
// helicity amplitudes.
ParityObservables parity_observables(const KappaFactor& k);

struct ReducedSpectrum {
    double lambda_plus = 1.0;   // larger eigenvalue
    double lambda_minus = 0.0;  // 1 - lambda_plus exactly
};

// Eigenvalues of the parity-reduced density matrix of a wave with helicity
// amplitudes (a_plus, a_minus):
//   lambda_+- = 1/2 +- sqrt(1/4 - 4k^2/(1+k^2)^2 * |a+|^2|a-|^2/(|a+|^2+|a-|^2)^2).
// Throws ZeroAmplitudes when both amplitudes vanish.
ReducedSpectrum reduced_spectrum(const KappaFactor& k, cplx a_plus,
                                 cplx a_minus);

// -l+ log2(l+) - l- log2(l-), with 0*log(0) = 0. In [0,1].
double von_neumann_entropy(const ReducedSpectrum& spec);

// Chirality of a wave from its helicity amplitudes (quadratic, not
// normalized): sqrt(1-mu^2)(|a+|^2-|a-|^2) for incident/reflected waves;
// the transmitted wave replaces the prefactor by
//   +- sqrt((1-mu^2) sin^2 t_c / ((1-mu^2) sin^2 t_c + mu^2))
// with + on the diffusion side and - on the Klein side.
double chirality(Wave wave, double mu, double sin_theta_c, ZoneSide side,
                 cplx a_plus, cplx a_minus);

struct ExtremalPoint {
    double sin_theta_0 = 0.0;
    ReducedSpectrum spectrum;
};

// The two stationary points of the reflected-wave entropy for real incident
// amplitudes: normal incidence with
//   lambda_+- = 1/2 +- (1/2) sqrt(1 - 4(1-mu^2)|I+ I-|^2),
// and sin_theta_0 = mu/sqrt(1+mu^2) with lambda_+- = (1 +- mu)/2.
// Throws PreconditionPhase when the amplitudes carry a relative phase
// (the closed form does not apply; scan numerically instead) and
// std::invalid_argument when they are not normalized.
std::array<ExtremalPoint, 2> extremal_points(double mu,
                                             const IncidentAmplitudes& inc);

// One grid point of an entropy scan. s_t is empty wherever the transmitted
// wave is evanescent; note is nonempty when the point failed (it carries the
// error text) or when s_t was skipped.
struct ScanPoint {
    double sin_theta = 0.0;
    std::optional<double> s_r;
    std::optional<double> s_t;
    std::string note;
};

// Reflected/transmitted entropies over the grid, in grid order. Failed
// points are marked, never dropped, and never abort the scan.
std::vector<ScanPoint> entropy_scan(const StepConfig& config,
                                    const std::vector<double>& sin_theta_grid);

// Charge-conjugate problem: mu -> -mu; nu = V0/E is invariant. Entropies of
// the transformed problem equal the original ones with delta_omega negated.
StepConfig antiparticle_transform(const StepConfig& config);

struct Extremum {
    double x = 0.0;
    double value = 0.0;
};

// Golden-section search for an interior extremum of f on [lo, hi]; converges
// to the nearer edge when the extremum sits outside. x_tol is the bracket
// width at which the search stops.
Extremum find_extremum(const std::function<double(double)>& f, double lo,
                       double hi, bool maximize, double x_tol = 1e-10);

// Everything the report layer prints about one wave.
struct EntanglementReport {
    double entropy = 0.0;
    ReducedSpectrum spectrum;
    double p_odd = 0.0;
    double p_even = 0.0;
    double avg_parity = 0.0;
    double chirality = 0.0;
};

EntanglementReport make_report(const KappaFactor& k, cplx a_plus, cplx a_minus,
                               double chirality_value);

}  // namespace diracstep
