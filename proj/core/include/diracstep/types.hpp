#pragma once

#include <cmath>
#include <complex>
#include <string_view>

// Shared value types for the step-scattering library. Everything is
// dimensionless: energies are measured in units of the incident energy E,
// so the medium is described by mu = m/E and nu = V0/E alone, and angles
// enter through sin(theta) (the natural abscissa for all derived curves).

namespace diracstep {

using cplx = std::complex<double>;

// Transmitted-wave character at a given (mu, nu, sin theta).
enum class Zone {
    DiffusionOscillatory,  // 1 > nu + sqrt((1-mu^2) sin^2 + mu^2)
    KleinOscillatory,      // nu - sqrt(...) > 1
    TunnelingSub,          // evanescent, nu <= 1
    TunnelingKlein,        // evanescent, nu > 1
};

// Which side of nu = 1 a critical-angle parameterization refers to.
enum class ZoneSide { Diffusion, Klein };

enum class Wave { Incident, Reflected, Transmitted };
enum class Helicity { Plus, Minus };
enum class Subsystem { Parity, HelicitySpin };

constexpr std::string_view zone_tag(Zone z) {
    switch (z) {
        case Zone::DiffusionOscillatory: return "diffusion_oscillatory";
        case Zone::KleinOscillatory: return "klein_oscillatory";
        case Zone::TunnelingSub: return "tunneling_sub";
        case Zone::TunnelingKlein: return "tunneling_klein";
    }
    return "unknown";
}

constexpr bool is_oscillatory(Zone z) {
    return z == Zone::DiffusionOscillatory || z == Zone::KleinOscillatory;
}

// Dimensionless medium: mu in (-1, 1) (negative values describe the
// antiparticle continuation), nu >= 0.
struct MediumParams {
    double mu = 0.0;
    double nu = 0.0;
};

// Helicity amplitudes of the incoming wave. Normalization
// |i_plus|^2 + |i_minus|^2 = 1 is expected by the conservation and entropy
// layers; the linear maps themselves do not require it.
struct IncidentAmplitudes {
    cplx i_plus{1.0, 0.0};
    cplx i_minus{0.0, 0.0};

    // Build from magnitudes and a relative phase, split symmetrically:
    // I+- = exp(+-i delta_omega / 2) |I+-|.
    static IncidentAmplitudes from_phase(double mag_plus, double mag_minus,
                                         double delta_omega) {
        return {std::polar(mag_plus, 0.5 * delta_omega),
                std::polar(mag_minus, -0.5 * delta_omega)};
    }

    double norm_sq() const { return std::norm(i_plus) + std::norm(i_minus); }
};

// The four outgoing helicity amplitudes of a scattering event.
struct ScatteredAmplitudes {
    cplx r_plus, r_minus;  // reflected
    cplx t_plus, t_minus;  // transmitted

    double reflected_norm_sq() const {
        return std::norm(r_plus) + std::norm(r_minus);
    }
    double transmitted_norm_sq() const {
        return std::norm(t_plus) + std::norm(t_minus);
    }
};

// Barrier strength, either directly as nu or through the critical angle
// it produces on a chosen side of nu = 1.
struct Barrier {
    enum class Kind { Nu, Critical };
    Kind kind = Kind::Nu;
    double nu = 0.0;             // Kind::Nu
    double sin_theta_c = 1.0;    // Kind::Critical
    ZoneSide side = ZoneSide::Diffusion;

    static Barrier from_nu(double nu) {
        Barrier b;
        b.kind = Kind::Nu;
        b.nu = nu;
        return b;
    }
    static Barrier from_critical(double sin_theta_c, ZoneSide side) {
        Barrier b;
        b.kind = Kind::Critical;
        b.sin_theta_c = sin_theta_c;
        b.side = side;
        return b;
    }
};

// One full scan/sweep configuration.
struct StepConfig {
    double mu = 0.5;
    Barrier barrier;
    double i_plus_mag = 1.0;
    double i_minus_mag = 0.0;
    double delta_omega = 0.0;
    int theta_samples = 400;
    double sin_theta_max = 0.999999;  // grid upper end, just below pi/2

    IncidentAmplitudes incident() const {
        return IncidentAmplitudes::from_phase(i_plus_mag, i_minus_mag,
                                              delta_omega);
    }
};

}  // namespace diracstep
