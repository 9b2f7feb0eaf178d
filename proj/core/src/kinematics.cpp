#include "diracstep/kinematics.hpp"

#include <cmath>
#include <sstream>

#include "diracstep/errors.hpp"

namespace diracstep {

namespace {

std::string point_str(double mu, double nu, double sin_theta) {
    std::ostringstream os;
    os.precision(17);
    os << "mu=" << mu << " nu=" << nu << " sin_theta=" << sin_theta;
    return os.str();
}

}  // namespace

double critical_sine_squared(const MediumParams& params) {
    const double om = 1.0 - params.nu;
    return (om * om - params.mu * params.mu) / (1.0 - params.mu * params.mu);
}

double nu_from_critical(double mu, double sin_theta_c, ZoneSide side) {
    // mu^2 + (1-mu^2) s_c^2 arranged so s_c = 1 gives exactly 1 (nu = 0).
    const double s2c = sin_theta_c * sin_theta_c;
    const double root = std::sqrt(mu * mu * (1.0 - s2c) + s2c);
    return side == ZoneSide::Diffusion ? 1.0 - root : 1.0 + root;
}

double barrier_nu(const Barrier& barrier, double mu) {
    return barrier.kind == Barrier::Kind::Nu
               ? barrier.nu
               : nu_from_critical(mu, barrier.sin_theta_c, barrier.side);
}

Zone classify(const MediumParams& params, double sin_theta) {
    const double mu = params.mu, nu = params.nu;
    const double root =
        std::sqrt((1.0 - mu * mu) * sin_theta * sin_theta + mu * mu);
    if (1.0 > nu + root) return Zone::DiffusionOscillatory;
    if (nu - root > 1.0) return Zone::KleinOscillatory;
    return nu <= 1.0 ? Zone::TunnelingSub : Zone::TunnelingKlein;
}

RefractionResult refract(const MediumParams& params, double sin_theta) {
    const double mu = params.mu, nu = params.nu;
    const double q2 = (1.0 - nu) * (1.0 - nu) - mu * mu;
    if (q2 == 0.0)
        throw DegenerateTransmission("transmitted momentum q = 0 at " +
                                     point_str(mu, nu, sin_theta));

    const double p = std::sqrt(1.0 - mu * mu);
    const double qy = p * sin_theta;
    const double qx2 = q2 - qy * qy;  // real in every regime

    RefractionResult out;
    if (nu == 0.0) {
        // Transparent interface: theta' = theta exactly, no round-trip
        // through q so the no-step amplitudes vanish identically.
        const double ct = std::sqrt(1.0 - sin_theta * sin_theta);
        out.q = p;
        out.q_y = qy;
        out.q_x = p * ct;
        out.sin_theta_prime = sin_theta;
        out.cos_theta_prime = ct;
        out.evanescent = false;
        out.mu = mu;
        out.nu = nu;
        out.sin_theta = sin_theta;
        return out;
    }
    out.q = std::sqrt(cplx(q2));
    out.q_y = qy;
    if (qx2 > 0.0) {
        out.q_x = cplx(std::sqrt(qx2), 0.0);
        out.evanescent = false;
    } else {
        out.q_x = cplx(0.0, std::sqrt(-qx2));  // decay toward x -> +inf
        out.evanescent = true;
    }
    out.sin_theta_prime = qy / out.q;
    out.cos_theta_prime = out.q_x / out.q;
    out.mu = mu;
    out.nu = nu;
    out.sin_theta = sin_theta;
    return out;
}

double flux_ratio(const MediumParams& params, double sin_theta) {
    if (sin_theta >= 1.0)
        throw NormalFluxZero("incident normal velocity vanishes at "
                             "grazing incidence (sin_theta = " +
                             std::to_string(sin_theta) + ")");
    const Zone z = classify(params, sin_theta);
    if (!is_oscillatory(z)) return 0.0;

    const double mu = params.mu, nu = params.nu;
    const RefractionResult r = refract(params, sin_theta);
    const double cos_theta = std::sqrt(1.0 - sin_theta * sin_theta);
    const double vq = r.cos_theta_prime.real() *
                      std::sqrt((1.0 - nu) * (1.0 - nu) - mu * mu) /
                      (1.0 - nu);
    const double vp = cos_theta * std::sqrt(1.0 - mu * mu);
    return vq / vp;
}

}  // namespace diracstep
