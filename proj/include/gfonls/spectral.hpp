#pragma once

// Uniformized spectral geometry.
//
// The two-sheeted relation lambda^2 = k^2 + psi0^2 is resolved by the
// conformal coordinate z = k + lambda, with inverse
//
//   k(z)      = (z - psi0^2/z)/2,
//   lambda(z) = (z + psi0^2/z)/2.
//
// The plane splits into D+ / D- by the sign of (|z|^2 - psi0^2) Im z; the
// continuous spectrum Sigma is the real axis plus the circle |z| = psi0.
// The Jost phase is theta(x,t,z) = lambda(z) (x + Omega(k(z)) t).

#include <complex>

#include "gfonls/model.hpp"

namespace gfonls::spectral {

void require_nonzero(cplx z);

cplx k_of_z(cplx z, const ModelParams& p);
cplx lambda_of_z(cplx z, const ModelParams& p);

// dk/dz and dlambda/dz
cplx k_prime_z(cplx z, const ModelParams& p);
cplx lambda_prime_z(cplx z, const ModelParams& p);

// Omega(k) in the chosen mode, evaluated at k = k_of_z(z).
cplx dispersion_omega(cplx z, const ModelParams& p,
                      DispersionMode mode = DispersionMode::Printed);
// dOmega/dk at k = k_of_z(z)
cplx dispersion_omega_prime(cplx z, const ModelParams& p,
                            DispersionMode mode = DispersionMode::Printed);

cplx theta(double x, double t, cplx z, const ModelParams& p,
           DispersionMode mode = DispersionMode::Printed);
// d(theta)/dz
cplx theta_prime_z(double x, double t, cplx z, const ModelParams& p,
                   DispersionMode mode = DispersionMode::Printed);

// Boundary points are classified Sigma inside a band of width
// eps_region = 1e-12 * max(1, |z|^2).
RegionTag region_of(cplx z, const ModelParams& p);

// z -> -psi0^2/z, the second involution of the spectral plane
inline cplx involution(cplx z, const ModelParams& p) {
    return -p.psi0 * p.psi0 / z;
}

}  // namespace gfonls::spectral
