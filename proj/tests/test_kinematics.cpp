#include <doctest.h>

#include <cmath>

#include "diracstep/errors.hpp"
#include "diracstep/kinematics.hpp"

#include "test_support.hpp"

using namespace diracstep;
using testsupport::Rng;

namespace {
// Reference media: mu = 0.5 with the step tuned so the critical angle sits
// at sin(theta_c) = 1/2 on either side of nu = 1.
constexpr double kMu = 0.5;
const double kNuD = nu_from_critical(kMu, 0.5, ZoneSide::Diffusion);
const double kNuK = nu_from_critical(kMu, 0.5, ZoneSide::Klein);
}  // namespace

TEST_CASE("critical angle and its inverse agree on reference media") {
    CHECK(kNuD == doctest::Approx(0.338562172233852).epsilon(1e-14));
    CHECK(kNuK == doctest::Approx(1.661437827766148).epsilon(1e-14));
    CHECK(critical_sine_squared({kMu, kNuD}) ==
          doctest::Approx(0.25).epsilon(1e-14));
    CHECK(critical_sine_squared({kMu, kNuK}) ==
          doctest::Approx(0.25).epsilon(1e-14));
    // nu = 1 leaves no oscillatory window at all
    CHECK(critical_sine_squared({kMu, 1.0}) ==
          doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    // transparent step: the rearranged radicand gives exactly zero
    CHECK(nu_from_critical(kMu, 1.0, ZoneSide::Diffusion) == 0.0);
}

TEST_CASE("critical angle roundtrip over random media") {
    Rng rng(101);
    for (int i = 0; i < 2000; ++i) {
        const double mu = rng.uniform(-0.95, 0.95);
        const double sc = rng.uniform(0.05, 1.0);
        const ZoneSide side =
            rng.flip() ? ZoneSide::Diffusion : ZoneSide::Klein;
        const double nu = nu_from_critical(mu, sc, side);
        CHECK(nu >= 0.0);
        if (side == ZoneSide::Diffusion) CHECK(nu <= 1.0);
        if (side == ZoneSide::Klein) CHECK(nu >= 1.0);
        CHECK(critical_sine_squared({mu, nu}) ==
              doctest::Approx(sc * sc).epsilon(5e-12));
    }
}

TEST_CASE("zone classification on both sides of the step") {
    CHECK(classify({kMu, kNuD}, 0.3) == Zone::DiffusionOscillatory);
    CHECK(classify({kMu, kNuD}, 0.6) == Zone::TunnelingSub);
    CHECK(classify({kMu, kNuK}, 0.3) == Zone::KleinOscillatory);
    CHECK(classify({kMu, kNuK}, 0.6) == Zone::TunnelingKlein);
}

TEST_CASE("incidence exactly at the critical angle counts as tunneling") {
    // massless cases make the boundary comparison exact in floating point
    CHECK(classify({0.0, 0.5}, 0.5) == Zone::TunnelingSub);
    CHECK(classify({0.0, 1.5}, 0.5) == Zone::TunnelingKlein);
    // and the massive diffusion reference is exact as well: every
    // intermediate of the radicand is representable
    CHECK(classify({kMu, kNuD}, 0.5) == Zone::TunnelingSub);
}

TEST_CASE("classification matches the refraction evanescent flag") {
    Rng rng(202);
    int tested = 0;
    while (tested < 4000) {
        const double mu = rng.uniform(-0.95, 0.95);
        const double nu = rng.uniform(0.0, 2.5);
        const double s = rng.uniform(1e-3, 0.995);
        const double q2 = (1.0 - nu) * (1.0 - nu) - mu * mu;
        const double qx2 = q2 - (1.0 - mu * mu) * s * s;
        // stay away from the degenerate medium and the zone boundary, where
        // the two formulations may round to different sides
        if (std::fabs(q2) < 1e-10 || std::fabs(qx2) < 1e-10) continue;
        ++tested;
        const Zone z = classify({mu, nu}, s);
        const RefractionResult r = refract({mu, nu}, s);
        CHECK(is_oscillatory(z) == !r.evanescent);
        if (nu <= 1.0)
            CHECK((z == Zone::DiffusionOscillatory || z == Zone::TunnelingSub));
        else
            CHECK((z == Zone::KleinOscillatory || z == Zone::TunnelingKlein));
    }
}

TEST_CASE("refraction satisfies the complex Snell identities") {
    Rng rng(303);
    for (int i = 0; i < 2000; ++i) {
        const double mu = rng.uniform(-0.95, 0.95);
        const double nu = rng.uniform(0.0, 2.5);
        const double s = rng.uniform(1e-3, 0.995);
        if (std::fabs((1.0 - nu) * (1.0 - nu) - mu * mu) < 1e-8) continue;
        const RefractionResult r = refract({mu, nu}, s);
        // sin^2 + cos^2 = 1 as complex numbers
        const cplx one = r.sin_theta_prime * r.sin_theta_prime +
                         r.cos_theta_prime * r.cos_theta_prime;
        CHECK(std::abs(one - cplx(1.0, 0.0)) < 1e-12);
        // transverse momentum is conserved: q sin(theta') = p sin(theta)
        const double p = std::sqrt(1.0 - mu * mu);
        CHECK(std::abs(r.q * r.sin_theta_prime - p * s) < 1e-12);
        CHECK(r.q_y == doctest::Approx(p * s).epsilon(1e-13));
        // phase() is assembled from the stored pair, never conjugated
        CHECK(std::abs(r.phase() -
                       (r.cos_theta_prime + cplx(0, 1) * r.sin_theta_prime)) ==
              0.0);
        CHECK(r.mu == mu);
        CHECK(r.nu == nu);
        CHECK(r.sin_theta == s);
    }
}

TEST_CASE("refraction branches: oscillatory, shallow and deep tunneling") {
    // oscillatory, diffusion side: real angles and a wider refracted one
    const RefractionResult ro = refract({kMu, kNuD}, 0.3);
    CHECK(!ro.evanescent);
    CHECK(ro.sin_theta_prime.imag() == 0.0);
    CHECK(ro.cos_theta_prime.imag() == 0.0);
    CHECK(ro.sin_theta_prime.real() > 0.3);

    // shallow tunneling (q^2 > 0, q_x^2 < 0): real sine above 1, cosine on
    // the +i branch that decays into the step
    const RefractionResult rs = refract({kMu, kNuD}, 0.6);
    CHECK(rs.evanescent);
    CHECK(rs.sin_theta_prime.imag() == 0.0);
    CHECK(rs.sin_theta_prime.real() > 1.0);
    CHECK(rs.cos_theta_prime.real() == doctest::Approx(0.0));
    CHECK(rs.cos_theta_prime.imag() > 0.0);

    // deep tunneling (q^2 < 0): purely imaginary sine, real cosine
    const RefractionResult rd = refract({kMu, 0.9}, 0.3);
    CHECK(rd.evanescent);
    CHECK(rd.sin_theta_prime.real() == doctest::Approx(0.0));
    CHECK(rd.sin_theta_prime.imag() != 0.0);
    CHECK(rd.cos_theta_prime.imag() == doctest::Approx(0.0));
    CHECK(rd.cos_theta_prime.real() > 0.0);
}

TEST_CASE("transparent step refracts to the incident angle exactly") {
    for (double mu : {-0.7, 0.0, 0.3, 0.9}) {
        for (double s : {0.1, 0.37, 0.95}) {
            const RefractionResult r = refract({mu, 0.0}, s);
            CHECK(r.sin_theta_prime == cplx(s, 0.0));
            CHECK(!r.evanescent);
        }
    }
}

TEST_CASE("refraction widens the angle on the diffusion side") {
    Rng rng(404);
    for (int i = 0; i < 500; ++i) {
        const double mu = rng.uniform(-0.9, 0.9);
        const double nu = rng.uniform(1e-3, 0.9);
        const double s = rng.uniform(1e-3, 0.99);
        if (classify({mu, nu}, s) != Zone::DiffusionOscillatory) continue;
        CHECK(refract({mu, nu}, s).sin_theta_prime.real() >= s);
    }
}

TEST_CASE("degenerate step height is rejected") {
    CHECK_THROWS_AS(refract({0.5, 0.5}, 0.3), DegenerateTransmission);
    CHECK_THROWS_AS(refract({0.5, 1.5}, 0.3), DegenerateTransmission);
    CHECK_THROWS_AS(refract({-0.5, 0.5}, 0.3), DegenerateTransmission);
}

TEST_CASE("flux ratio signs follow the zone") {
    // frozen reference values, diffusion/Klein mirror pair
    CHECK(flux_ratio({kMu, kNuD}, 0.3) ==
          doctest::Approx(0.633943081400262).epsilon(1e-13));
    CHECK(flux_ratio({kMu, kNuK}, 0.3) ==
          doctest::Approx(-0.633943081400262).epsilon(1e-13));
    // near-normal Klein incidence
    CHECK(flux_ratio({kMu, kNuK}, 1e-300) ==
          doctest::Approx(-0.755928946018455).epsilon(1e-13));

    // tunneling carries no transmitted current: exact zero, not just small
    CHECK(flux_ratio({kMu, kNuD}, 0.6) == 0.0);
    CHECK(flux_ratio({kMu, kNuK}, 0.6) == 0.0);
    CHECK(flux_ratio({kMu, 0.9}, 0.3) == 0.0);

    Rng rng(505);
    for (int i = 0; i < 500; ++i) {
        const double mu = rng.uniform(-0.95, 0.95);
        const double nu = rng.uniform(0.0, 2.5);
        const double s = rng.uniform(1e-3, 0.995);
        if (std::fabs((1.0 - nu) * (1.0 - nu) - mu * mu) < 1e-8) continue;
        const double f = flux_ratio({mu, nu}, s);
        switch (classify({mu, nu}, s)) {
            case Zone::DiffusionOscillatory: CHECK(f > 0.0); break;
            case Zone::KleinOscillatory: CHECK(f < 0.0); break;
            default: CHECK(f == 0.0); break;
        }
    }
}

TEST_CASE("grazing incidence has no well-defined flux ratio") {
    CHECK_THROWS_AS(flux_ratio({kMu, kNuD}, 1.0), NormalFluxZero);
}

TEST_CASE("barrier descriptions resolve to the same step height") {
    CHECK(barrier_nu(Barrier::from_nu(0.7), 0.2) == 0.7);
    CHECK(barrier_nu(Barrier::from_nu(0.7), 0.9) == 0.7);
    CHECK(barrier_nu(Barrier::from_critical(0.5, ZoneSide::Diffusion), kMu) ==
          kNuD);
    CHECK(barrier_nu(Barrier::from_critical(0.5, ZoneSide::Klein), kMu) ==
          kNuK);
    CHECK(barrier_nu(Barrier::from_critical(1.0, ZoneSide::Diffusion), 0.83) ==
          0.0);
}
