#include <doctest.h>

#include <complex>
#include <random>

#include "gfonls/spectral.hpp"

using namespace gfonls;
using namespace gfonls::spectral;
using doctest::Approx;

namespace {
const cplx I{0.0, 1.0};

ModelParams params(double a2 = 0, double a3 = 0, double a4 = 0, double a5 = 0,
                   cplx psim = {1.0, 0.0}) {
    return ModelParams::make(a2, a3, a4, a5, psim);
}

double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
}  // namespace

TEST_CASE("k and lambda at reference points") {
    auto p = params();
    CHECK(k_of_z({2.0, 0.0}, p).real() == Approx(0.75));
    CHECK(k_of_z({2.0, 0.0}, p).imag() == Approx(0.0));
    CHECK(std::abs(k_of_z(I * 1.0, p) - I) < 1e-15);          // branch point
    CHECK(std::abs(k_of_z({-0.5, 0.0}, p) - cplx{0.75, 0.0}) < 1e-15);  // involution image of 2

    CHECK(lambda_of_z({2.0, 0.0}, p).real() == Approx(1.25));
    CHECK(std::abs(lambda_of_z(I, p)) < 1e-15);
    CHECK(lambda_of_z({-0.5, 0.0}, p).real() == Approx(-1.25));

    const cplx k = k_of_z({2.0, 0.0}, p), lam = lambda_of_z({2.0, 0.0}, p);
    CHECK(std::abs(lam * lam - k * k - 1.0) < 1e-15);
}

TEST_CASE("maps reject the pole at z=0") {
    auto p = params();
    CHECK_THROWS_AS(k_of_z({0.0, 0.0}, p), std::domain_error);
    CHECK_THROWS_AS(lambda_of_z({1e-13, 0.0}, p), std::domain_error);
    CHECK_THROWS_AS(theta(0, 0, {0.0, 0.0}, p), std::domain_error);
}

TEST_CASE("printed dispersion at reference points") {
    const cplx z{2.0, 0.0};
    CHECK(dispersion_omega(z, params(1), DispersionMode::Printed).real() == Approx(-1.5));
    CHECK(dispersion_omega(z, params(0, 1), DispersionMode::Printed).real() == Approx(0.25));
    CHECK(std::abs(dispersion_omega(z, params(), DispersionMode::Printed)) == 0.0);
}

TEST_CASE("theta values and antisymmetry") {
    const cplx z{2.0, 0.0};
    CHECK(theta(1, 0, z, params(1)).real() == Approx(1.25));
    CHECK(theta(1, 0, {-0.5, 0.0}, params(1)).real() == Approx(-1.25));
    CHECK(theta(0, 1, z, params(1), DispersionMode::Printed).real() ==
          Approx(1.25 * -1.5));
}

TEST_CASE("theta_prime_z reference values") {
    const cplx z{2.0, 0.0};
    auto p = params(1);
    CHECK(theta_prime_z(1, 0, z, p).real() == Approx(0.375));
    CHECK(std::abs(theta_prime_z(0, 0, z, p)) < 1e-15);
    // lambda'*Omega + lambda*(-2)*k' = 0.375*(-1.5) + 1.25*(-2)*0.625
    CHECK(theta_prime_z(0, 1, z, p, DispersionMode::Printed).real() == Approx(-2.125));
}

TEST_CASE("theta_prime_z matches central finite differences") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> mag(0.1, 10.0), ang(-3.1, 3.1), xt(-2.0, 2.0);
    auto p = params(0.7, 0.3, 0.2, 0.05);
    for (auto mode : {DispersionMode::Printed, DispersionMode::Lax}) {
        for (int it = 0; it < 200; ++it) {
            const cplx z = std::polar(mag(rng), ang(rng));
            if (std::abs(z) < 0.05) continue;
            const double x = xt(rng), t = xt(rng);
            const double h = 1e-5 * std::abs(z);
            const cplx fd =
                (theta(x, t, z + h, p, mode) - theta(x, t, z - h, p, mode)) / (2.0 * h);
            const cplx an = theta_prime_z(x, t, z, p, mode);
            CHECK(std::abs(fd - an) <= 1e-6 * std::max(1.0, std::abs(an)));
        }
    }
}

TEST_CASE("spectral identities over random z") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> mag(0.1, 10.0), ang(-3.14, 3.14), xt(-3.0, 3.0);
    auto p = params(0.4, 0.8, 0.1, 0.02, {0.6, 0.8});
    const double s2 = p.psi0 * p.psi0;
    for (int it = 0; it < 1000; ++it) {
        const cplx z = std::polar(mag(rng), ang(rng));
        const cplx k = k_of_z(z, p), lam = lambda_of_z(z, p);
        CHECK(rel_err(lam * lam, k * k + s2) < 1e-12);

        const cplx zi = involution(z, p);
        CHECK(rel_err(k_of_z(zi, p), k) < 1e-10);
        CHECK(rel_err(lambda_of_z(zi, p), -lam) < 1e-10);

        const double x = xt(rng), t = xt(rng);
        for (auto mode : {DispersionMode::Printed, DispersionMode::Lax}) {
            CHECK(rel_err(theta(x, t, zi, p, mode), -theta(x, t, z, p, mode)) < 1e-10);
            // conjugation symmetry requires real x, t
            CHECK(rel_err(theta(x, t, std::conj(z), p, mode),
                          std::conj(theta(x, t, z, p, mode))) < 1e-10);
        }
        CHECK(rel_err(k_of_z(std::conj(z), p), std::conj(k)) < 1e-12);
        CHECK(rel_err(lambda_of_z(std::conj(z), p), std::conj(lam)) < 1e-12);
    }
}

TEST_CASE("region classification") {
    auto p = params();
    CHECK(region_of({1.0, 1.0}, p) == RegionTag::DPlus);
    CHECK(region_of({0.0, 0.5}, p) == RegionTag::DMinus);
    CHECK(region_of({2.0, 0.0}, p) == RegionTag::Sigma);           // real axis
    CHECK(region_of(std::polar(1.0, 0.7), p) == RegionTag::Sigma); // circle |z| = psi0
    CHECK(region_of({0.0, -0.5}, p) == RegionTag::DPlus);
    CHECK(region_of({1.0, -1.0}, p) == RegionTag::DMinus);
}
