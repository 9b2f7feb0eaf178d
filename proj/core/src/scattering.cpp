#include "diracstep/scattering.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "diracstep/errors.hpp"
#include "medium_weights.hpp"

namespace diracstep {

namespace {

std::string point_str(double mu, double nu, double sin_theta) {
    std::ostringstream os;
    os.precision(17);
    os << "mu=" << mu << " nu=" << nu << " sin_theta=" << sin_theta;
    return os.str();
}

// Everything scatter needs, derived from one refraction record.
struct Pieces {
    cplx same, cross;   // coupling pieces, already divided by W
    cplx den_u, den_v;  // transmission denominators a + b*e2, b + a*e2
    cplx emtp;          // e^{-i theta'}
    double cos_theta;
};

Pieces make_pieces(const RefractionResult& refr) {
    const double st = refr.sin_theta;
    const double ct = std::sqrt(1.0 - st * st);
    const auto wa = detail::medium_weights(1.0, refr.mu);
    const auto wb = detail::medium_weights(1.0 - refr.nu, refr.mu);
    const cplx a = wb.n / wa.n;
    const cplx b = (wb.n * wb.c) / (wa.n * wa.c);
    const cplx r = b / a;

    const cplx w = 1.0 + r * r +
                   2.0 * r *
                       (ct * refr.cos_theta_prime - st * refr.sin_theta_prime);
    if (w == cplx(0.0))
        throw SingularDenominator(
            "coupling denominator vanished at " +
            point_str(refr.mu, refr.nu, st));

    const cplx s_minus = (r * r - 1.0) * ct;
    const cplx s_plus = (1.0 + r * r) * st - 2.0 * r * refr.sin_theta_prime;

    Pieces p;
    p.cos_theta = ct;
    p.same = s_plus / w;
    p.cross = -s_minus / w;
    p.emtp = refr.cos_theta_prime - cplx(0.0, 1.0) * refr.sin_theta_prime;
    const cplx e2 = cplx(ct, -st) * p.emtp;  // e^{-i(theta + theta')}
    p.den_u = a + b * e2;
    p.den_v = b + a * e2;
    return p;
}

double expand_product(double ia, double ra, double mp, double mm, double dw) {
    const double prod = ia * ra;
    const double diff = ia * ia - ra * ra;
    const double mpm = mp * mm;
    const double sdw = std::sin(dw);
    return prod * prod + diff * diff * mpm * mpm -
           2.0 * prod * diff * sdw * mpm * (mp * mp - mm * mm) -
           4.0 * prod * prod * sdw * sdw * mpm * mpm;
}

}  // namespace

AParam compute_A(double mu, double sin_theta, double sin_theta_c,
                 ZoneSide side) {
    return compute_A_from_critical_sq(mu, sin_theta,
                                      sin_theta_c * sin_theta_c, side);
}

AParam compute_A_from_critical_sq(double mu, double sin_theta,
                                  double critical_sine_sq, ZoneSide side) {
    const double s2c = critical_sine_sq;
    // mu^2 + (1-mu^2) s2c, arranged so s2c = 1 gives exactly 1 (nu = 0).
    const double root_sq = mu * mu * (1.0 - s2c) + s2c;
    if (root_sq < 0.0) {
        std::ostringstream os;
        os.precision(17);
        os << "no real step height for mu=" << mu
           << " critical_sine_sq=" << s2c;
        throw std::domain_error(os.str());
    }
    const double root = std::sqrt(root_sq);
    const double nu = side == ZoneSide::Diffusion ? 1.0 - root : 1.0 + root;

    const RefractionResult refr = refract({mu, nu}, sin_theta);
    const Pieces p = make_pieces(refr);

    const double ct = std::sqrt(1.0 - sin_theta * sin_theta);
    const double c2c = 1.0 - s2c;
    const double sgn = side == ZoneSide::Diffusion ? 1.0 : -1.0;
    const cplx root_c = std::sqrt(cplx(s2c - sin_theta * sin_theta));
    const cplx num = cplx(mu * ct, sin_theta) * c2c;
    const cplx den = c2c - (1.0 + sgn * root) * (ct * ct + ct * root_c);
    if (den == cplx(0.0))
        throw SingularDenominator("closed-form denominator vanished at " +
                                  point_str(mu, nu, sin_theta));

    return {num / den, side, p.same, p.cross};
}

AParam compute_A_for_medium(const MediumParams& params, double sin_theta) {
    const ZoneSide side =
        params.nu <= 1.0 ? ZoneSide::Diffusion : ZoneSide::Klein;
    return compute_A_from_critical_sq(params.mu, sin_theta,
                                      critical_sine_squared(params), side);
}

ScatteredAmplitudes scatter(const AParam& a, double sin_theta,
                            const RefractionResult& refr,
                            const IncidentAmplitudes& inc) {
    if (std::abs(refr.sin_theta - sin_theta) > 1e-9)
        throw std::invalid_argument(
            "refraction data describes a different incidence angle");
    if (a.zone_side == ZoneSide::Diffusion ? refr.nu > 1.0 : refr.nu < 1.0)
        throw std::invalid_argument(
            "A parameter and refraction data disagree on the barrier side");

    const Pieces p = make_pieces(refr);
    const double tol = 1e-6 * (1.0 + std::abs(a.same) + std::abs(a.cross));
    if (std::abs(p.same - a.same) > tol || std::abs(p.cross - a.cross) > tol)
        throw std::invalid_argument(
            "A parameter inconsistent with the refraction data");

    const cplx eth(p.cos_theta, refr.sin_theta);
    const cplx i1(0.0, 1.0);

    ScatteredAmplitudes out;
    out.r_plus = eth * (i1 * p.same * inc.i_plus - p.cross * inc.i_minus);
    out.r_minus = eth * (i1 * p.same * inc.i_minus - p.cross * inc.i_plus);

    if (p.den_u == cplx(0.0) || p.den_v == cplx(0.0))
        throw SingularDenominator("transmission denominator vanished at " +
                                  point_str(refr.mu, refr.nu, sin_theta));
    const cplx cs = 2.0 * p.cos_theta * p.emtp / p.den_u;
    const cplx cd = 2.0 * p.cos_theta * p.emtp / p.den_v;
    const cplx u = inc.i_plus + inc.i_minus;
    const cplx v = inc.i_plus - inc.i_minus;
    out.t_plus = 0.5 * (cs * u + cd * v);
    out.t_minus = 0.5 * (cs * u - cd * v);
    return out;
}

double conservation_residual(const ScatteredAmplitudes& amps,
                             double flux_ratio) {
    return amps.reflected_norm_sq() + flux_ratio * amps.transmitted_norm_sq() -
           1.0;
}

double reflected_product_with_phase(const AParam& a, double mag_plus,
                                    double mag_minus, double delta_omega) {
    const double n = mag_plus * mag_plus + mag_minus * mag_minus;
    if (std::abs(n - 1.0) > 1e-9)
        throw std::invalid_argument(
            "incident magnitudes must satisfy mp^2 + mm^2 = 1");
    const double rel =
        (a.same * std::conj(a.cross)).real() >= 0.0 ? 1.0 : -1.0;
    return expand_product(std::abs(a.same), rel * std::abs(a.cross), mag_plus,
                          mag_minus, delta_omega);
}

}  // namespace diracstep
