#include "diracstep/spinors.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "diracstep/errors.hpp"
#include "diracstep/kinematics.hpp"
#include "medium_weights.hpp"

namespace diracstep {

namespace {

std::string point_str(double mu, double nu, double sin_theta) {
    std::ostringstream os;
    os.precision(17);
    os << "mu=" << mu << " nu=" << nu << " sin_theta=" << sin_theta;
    return os.str();
}

}  // namespace

BiSpinor build_state(double mu, double nu_effective, cplx phase_factor,
                     Helicity h) {
    const auto w = detail::medium_weights(1.0 - nu_effective, mu);
    const double s = (h == Helicity::Plus) ? 1.0 : -1.0;
    return BiSpinor{{w.n * w.c, w.n * w.c * s * phase_factor, w.n * s,
                     w.n * phase_factor}};
}

BiSpinor build_state(double mu, double nu_effective, double theta,
                     Helicity h) {
    return build_state(mu, nu_effective, std::polar(1.0, theta), h);
}

namespace {

BiSpinor superpose(const BiSpinor& plus, const BiSpinor& minus, cplx a_plus,
                   cplx a_minus) {
    BiSpinor out;
    for (int i = 0; i < 4; ++i)
        out.c[i] = a_plus * plus.c[i] + a_minus * minus.c[i];
    return out;
}

}  // namespace

BiSpinor incident_wave(double mu, double sin_theta,
                       const IncidentAmplitudes& inc) {
    const double ct = std::sqrt(1.0 - sin_theta * sin_theta);
    const cplx e(ct, sin_theta);
    return superpose(build_state(mu, 0.0, e, Helicity::Plus),
                     build_state(mu, 0.0, e, Helicity::Minus), inc.i_plus,
                     inc.i_minus);
}

BiSpinor reflected_wave(double mu, double sin_theta,
                        const ScatteredAmplitudes& amps) {
    const double ct = std::sqrt(1.0 - sin_theta * sin_theta);
    const cplx e(-ct, sin_theta);
    return superpose(build_state(mu, 0.0, e, Helicity::Plus),
                     build_state(mu, 0.0, e, Helicity::Minus), amps.r_plus,
                     amps.r_minus);
}

BiSpinor transmitted_wave(double mu, double nu, double sin_theta,
                          const ScatteredAmplitudes& amps) {
    const RefractionResult r = refract({mu, nu}, sin_theta);
    const cplx e = r.phase();
    return superpose(build_state(mu, nu, e, Helicity::Plus),
                     build_state(mu, nu, e, Helicity::Minus), amps.t_plus,
                     amps.t_minus);
}

ScatteredAmplitudes boundary_solve(double mu, double nu, double sin_theta,
                                   const IncidentAmplitudes& inc) {
    const double ct = std::sqrt(1.0 - sin_theta * sin_theta);
    const RefractionResult r = refract({mu, nu}, sin_theta);

    const cplx eI(ct, sin_theta);
    const cplx eR(-ct, sin_theta);
    const cplx eT = r.phase();

    const BiSpinor rp = build_state(mu, 0.0, eR, Helicity::Plus);
    const BiSpinor rm = build_state(mu, 0.0, eR, Helicity::Minus);
    const BiSpinor tp = build_state(mu, nu, eT, Helicity::Plus);
    const BiSpinor tm = build_state(mu, nu, eT, Helicity::Minus);
    const BiSpinor ip = build_state(mu, 0.0, eI, Helicity::Plus);
    const BiSpinor im = build_state(mu, 0.0, eI, Helicity::Minus);

    Eigen::Matrix4cd M;
    Eigen::Vector4cd rhs;
    for (int i = 0; i < 4; ++i) {
        M(i, 0) = rp.c[i];
        M(i, 1) = rm.c[i];
        M(i, 2) = -tp.c[i];
        M(i, 3) = -tm.c[i];
        rhs(i) = -(inc.i_plus * ip.c[i] + inc.i_minus * im.c[i]);
    }

    Eigen::PartialPivLU<Eigen::Matrix4cd> lu(M);
    const double rcond = lu.rcond();
    if (!(rcond > 1e-12)) {
        std::ostringstream os;
        os << "boundary system condition number "
           << (rcond > 0 ? 1.0 / rcond : std::numeric_limits<double>::infinity())
           << " exceeds 1e12 at " << point_str(mu, nu, sin_theta);
        throw SingularSystem(os.str());
    }
    const Eigen::Vector4cd x = lu.solve(rhs);
    return {x(0), x(1), x(2), x(3)};
}

double boundary_residual(double mu, double nu, double sin_theta,
                         const IncidentAmplitudes& inc,
                         const ScatteredAmplitudes& amps) {
    const BiSpinor side_a = [&] {
        const BiSpinor i = incident_wave(mu, sin_theta, inc);
        const BiSpinor r = reflected_wave(mu, sin_theta, amps);
        return superpose(i, r, 1.0, 1.0);
    }();
    const BiSpinor side_b = transmitted_wave(mu, nu, sin_theta, amps);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        worst = std::max(worst, std::abs(side_a.c[i] - side_b.c[i]));
    return worst;
}

DensityMatrix density_matrix(const BiSpinor& state) {
    const double n2 = state.norm_sq();
    if (n2 == 0.0) throw ZeroState("density matrix of the null state");
    DensityMatrix rho;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            rho.m[i][j] = state.c[i] * std::conj(state.c[j]) / n2;
    return rho;
}

ReducedDensity partial_trace(const DensityMatrix& rho, Subsystem keep) {
    ReducedDensity red;
    red.subsystem = keep;
    if (keep == Subsystem::Parity) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                red.m[i][j] =
                    rho.m[2 * i][2 * j] + rho.m[2 * i + 1][2 * j + 1];
    } else {
        for (int s = 0; s < 2; ++s)
            for (int t = 0; t < 2; ++t)
                red.m[s][t] = rho.m[s][t] + rho.m[2 + s][2 + t];
    }
    return red;
}

std::array<double, 2> reduced_eigenvalues(const ReducedDensity& red) {
    const double tr = red.m[0][0].real() + red.m[1][1].real();
    const double det = (red.m[0][0] * red.m[1][1]).real() -
                       std::norm(red.m[0][1]);
    const double half = 0.5 * tr;
    const double disc = std::sqrt(std::max(half * half - det, 0.0));
    return {half + disc, half - disc};
}

double gamma5_expectation(const BiSpinor& state) {
    const double n2 = state.norm_sq();
    if (n2 == 0.0) throw ZeroState("gamma5 expectation of the null state");
    // sigma_x (x) I swaps the parity blocks.
    const cplx overlap = std::conj(state.c[0]) * state.c[2] +
                         std::conj(state.c[1]) * state.c[3];
    return 2.0 * overlap.real() / n2;
}

double current_x(const BiSpinor& state) {
    // sigma_x (x) sigma_x reverses the component order.
    const cplx overlap = std::conj(state.c[0]) * state.c[3] +
                         std::conj(state.c[1]) * state.c[2];
    return 2.0 * overlap.real();
}

}  // namespace diracstep
