#include "diracstep/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "diracstep/errors.hpp"
#include "diracstep/kinematics.hpp"
#include "diracstep/scattering.hpp"

namespace diracstep {

KappaFactor kappa(Wave wave, double mu, double nu) {
    KappaFactor k;
    k.wave = wave;
    if (wave != Wave::Transmitted) {
        k.ratio_sq = (1.0 - mu) / (1.0 + mu);
        k.value = std::sqrt(k.ratio_sq);
        return k;
    }
    const double den = 1.0 - nu + mu;
    if (den == 0.0) {
        std::ostringstream os;
        os.precision(17);
        os << "kappa_T singular at mu=" << mu << " nu=" << nu;
        throw EvanescentKappa(os.str());
    }
    k.ratio_sq = (1.0 - nu - mu) / den;
    if (k.ratio_sq < 0.0) {
        std::ostringstream os;
        os.precision(17);
        os << "kappa_T not real (tunneling at every angle) at mu=" << mu
           << " nu=" << nu;
        throw EvanescentKappa(os.str());
    }
    k.value = nu > 1.0
                  ? std::sqrt((nu - 1.0 - mu) / (nu - 1.0 + mu))
                  : std::sqrt(k.ratio_sq);
    return k;
}

ParityObservables parity_observables(const KappaFactor& k) {
    const double r2 = k.ratio_sq;
    const double den = 1.0 + r2;
    return {1.0 / den, r2 / den, (1.0 - r2) / den};
}

ReducedSpectrum reduced_spectrum(const KappaFactor& k, cplx a_plus,
                                 cplx a_minus) {
    const double n2p = std::norm(a_plus);
    const double n2m = std::norm(a_minus);
    const double total = n2p + n2m;
    if (total == 0.0)
        throw ZeroAmplitudes("reduced spectrum of a vanished wave");
    const double k2 = k.value * k.value;
    const double x =
        4.0 * k2 / ((1.0 + k2) * (1.0 + k2)) * (n2p * n2m) / (total * total);
    const double rad = std::sqrt(std::max(0.25 - x, 0.0));
    ReducedSpectrum spec;
    spec.lambda_plus = 0.5 + rad;
    // Exact complement: x >= 0 keeps lambda_plus in [1/2, 1], so 1 - l+ is
    // computed without cancellation and the pair sums to 1 exactly.
    spec.lambda_minus = std::max(1.0 - spec.lambda_plus, 0.0);
    return spec;
}

double von_neumann_entropy(const ReducedSpectrum& spec) {
    double s = 0.0;
    for (double l : {spec.lambda_plus, spec.lambda_minus})
        if (l > 0.0) s -= l * std::log2(l);
    return s;
}

double chirality(Wave wave, double mu, double sin_theta_c, ZoneSide side,
                 cplx a_plus, cplx a_minus) {
    const double diff = std::norm(a_plus) - std::norm(a_minus);
    if (wave != Wave::Transmitted) return std::sqrt(1.0 - mu * mu) * diff;
    const double s2c = sin_theta_c * sin_theta_c;
    const double weight = (1.0 - mu * mu) * s2c;
    if (weight + mu * mu == 0.0)
        throw DegenerateTransmission(
            "transmitted chirality undefined for mu = 0 at normal critical "
            "angle");
    const double mag = std::sqrt(weight / (weight + mu * mu));
    return (side == ZoneSide::Diffusion ? mag : -mag) * diff;
}

std::array<ExtremalPoint, 2> extremal_points(double mu,
                                             const IncidentAmplitudes& inc) {
    if (std::abs(inc.norm_sq() - 1.0) > 1e-9)
        throw std::invalid_argument("incident amplitudes must be normalized");
    if (std::abs(std::imag(inc.i_plus * std::conj(inc.i_minus))) > 1e-12)
        throw PreconditionPhase(
            "extremal points require real incident amplitudes");

    const double prod2 = std::norm(inc.i_plus) * std::norm(inc.i_minus);
    const double rad =
        std::sqrt(std::max(1.0 - 4.0 * (1.0 - mu * mu) * prod2, 0.0));

    ExtremalPoint normal;
    normal.sin_theta_0 = 0.0;
    normal.spectrum.lambda_plus = 0.5 + 0.5 * rad;
    normal.spectrum.lambda_minus = 1.0 - normal.spectrum.lambda_plus;

    ExtremalPoint oblique;
    oblique.sin_theta_0 = mu / std::sqrt(1.0 + mu * mu);
    oblique.spectrum.lambda_plus = 0.5 * (1.0 + std::abs(mu));
    oblique.spectrum.lambda_minus = 1.0 - oblique.spectrum.lambda_plus;

    return {normal, oblique};
}

std::vector<ScanPoint> entropy_scan(
    const StepConfig& config, const std::vector<double>& sin_theta_grid) {
    std::vector<ScanPoint> out;
    out.reserve(sin_theta_grid.size());
    const IncidentAmplitudes inc = config.incident();
    for (double s : sin_theta_grid) {
        ScanPoint pt;
        pt.sin_theta = s;
        try {
            const double nu = barrier_nu(config.barrier, config.mu);
            const MediumParams med{config.mu, nu};
            const RefractionResult refr = refract(med, s);
            const AParam a = compute_A_for_medium(med, s);
            const ScatteredAmplitudes amps = scatter(a, s, refr, inc);
            const KappaFactor k_r = kappa(Wave::Reflected, config.mu, nu);
            pt.s_r = von_neumann_entropy(
                reduced_spectrum(k_r, amps.r_plus, amps.r_minus));
            if (is_oscillatory(classify(med, s))) {
                const KappaFactor k_t =
                    kappa(Wave::Transmitted, config.mu, nu);
                pt.s_t = von_neumann_entropy(
                    reduced_spectrum(k_t, amps.t_plus, amps.t_minus));
            } else {
                pt.note = "evanescent transmission; S_T undefined";
            }
        } catch (const std::exception& e) {
            pt.note = e.what();
        }
        out.push_back(std::move(pt));
    }
    return out;
}

StepConfig antiparticle_transform(const StepConfig& config) {
    StepConfig out = config;
    out.mu = -config.mu;
    return out;
}

Extremum find_extremum(const std::function<double(double)>& f, double lo,
                       double hi, bool maximize, double x_tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    const double sign = maximize ? -1.0 : 1.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = sign * f(c);
    double fd = sign * f(d);
    while (b - a > x_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = sign * f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = sign * f(d);
        }
    }
    const double x = 0.5 * (a + b);
    return {x, f(x)};
}

EntanglementReport make_report(const KappaFactor& k, cplx a_plus, cplx a_minus,
                               double chirality_value) {
    EntanglementReport rep;
    rep.spectrum = reduced_spectrum(k, a_plus, a_minus);
    rep.entropy = von_neumann_entropy(rep.spectrum);
    const ParityObservables par = parity_observables(k);
    rep.p_odd = par.p_odd;
    rep.p_even = par.p_even;
    rep.avg_parity = par.avg_parity;
    rep.chirality = chirality_value;
    return rep;
}

}  // namespace diracstep
