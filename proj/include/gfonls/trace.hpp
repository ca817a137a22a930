#pragma once

// Reflectionless trace formulae.
//
//   s11(z) = prod_n (z - z_n)(z + psi0^2/z_n^*) / ((z - z_n^*)(z + psi0^2/z_n))
//   s22(z) = prod_n (z - z_n^*)(z + psi0^2/z_n) / ((z - z_n)(z + psi0^2/z_n^*))
//
// with every factor squared for double poles.  |s11| = 1 on the continuous
// spectrum, s11 s22 = 1, and arg s11(0) reproduces the theta condition.

#include <vector>

#include "gfonls/model.hpp"
#include "gfonls/spectrum.hpp"

namespace gfonls::trace {

cplx s11_reflectionless(cplx z, const std::vector<cplx>& eigenvalues,
                        const ModelParams& p, spectrum::PoleOrder order);
cplx s22_reflectionless(cplx z, const std::vector<cplx>& eigenvalues,
                        const ModelParams& p, spectrum::PoleOrder order);

}  // namespace gfonls::trace
