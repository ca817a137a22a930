#include "gfonls/trace.hpp"

#include <cmath>
#include <stdexcept>

namespace gfonls::trace {

namespace {
void require_off_pole(cplx z, cplx pole) {
    if (std::abs(z - pole) < 1e-12 * (1.0 + std::abs(z)))
        throw std::domain_error("trace formula evaluated at a pole");
}
}  // namespace

cplx s11_reflectionless(cplx z, const std::vector<cplx>& eigenvalues,
                        const ModelParams& p, spectrum::PoleOrder order) {
    const double s2 = p.psi0 * p.psi0;
    cplx prod{1.0, 0.0};
    for (cplx zn : eigenvalues) {
        require_off_pole(z, std::conj(zn));
        require_off_pole(z, -s2 / zn);
        const cplx f = (z - zn) * (z + s2 / std::conj(zn)) /
                       ((z - std::conj(zn)) * (z + s2 / zn));
        prod *= (order == spectrum::PoleOrder::Double) ? f * f : f;
    }
    return prod;
}

cplx s22_reflectionless(cplx z, const std::vector<cplx>& eigenvalues,
                        const ModelParams& p, spectrum::PoleOrder order) {
    const double s2 = p.psi0 * p.psi0;
    cplx prod{1.0, 0.0};
    for (cplx zn : eigenvalues) {
        require_off_pole(z, zn);
        require_off_pole(z, -s2 / std::conj(zn));
        const cplx f = (z - std::conj(zn)) * (z + s2 / zn) /
                       ((z - zn) * (z + s2 / std::conj(zn)));
        prod *= (order == spectrum::PoleOrder::Double) ? f * f : f;
    }
    return prod;
}

}  // namespace gfonls::trace
