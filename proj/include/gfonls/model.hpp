#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace gfonls {

using cplx = std::complex<double>;

inline constexpr double kZeroTol = 1e-12;   // |z| below this is treated as the pole at z=0

// Equation coefficients and the constant boundary state.
//
// psi0 is stored explicitly (not recomputed from psi_minus) so that the
// ZBC-limit mode (psi0 -> 0) stays numerically controlled.
struct ModelParams {
    double alpha2 = 0.0;
    double alpha3 = 0.0;
    double alpha4 = 0.0;
    double alpha5 = 0.0;
    cplx psi_minus{1.0, 0.0};
    double psi0 = 1.0;
    bool zbc_limit_mode = false;   // permits psi0 <= 1e-4 for limit studies

    static ModelParams make(double a2, double a3, double a4, double a5,
                            cplx psim, bool zbc_limit = false) {
        ModelParams p;
        p.alpha2 = a2; p.alpha3 = a3; p.alpha4 = a4; p.alpha5 = a5;
        p.psi_minus = psim;
        p.psi0 = std::abs(psim);
        p.zbc_limit_mode = zbc_limit;
        p.validate();
        return p;
    }

    void validate() const {
        if (!(psi0 > 0.0))
            throw std::domain_error("ModelParams: psi0 must be > 0");
        if (!zbc_limit_mode && psi0 <= 1e-4)
            throw std::domain_error(
                "ModelParams: psi0 <= 1e-4 requires zbc_limit_mode");
    }
};

enum class RegionTag { DPlus, DMinus, Sigma };

inline const char* to_string(RegionTag r) {
    switch (r) {
        case RegionTag::DPlus: return "D+";
        case RegionTag::DMinus: return "D-";
        default: return "Sigma";
    }
}

// Which dispersion polynomial theta uses.
//
// Printed evaluates the source expression verbatim.  Lax is the calibrated
// dispersion: the per-term value certified by the boundary Lax extraction
// plus the PDE-residual and direct-integration oracles.  The two differ in
// the alpha3 orientation and the alpha5 term (the printed alpha5 polynomial
// mixes dimensions); see lax::DispersionReport for the measured per-term
// discrepancies.
enum class DispersionMode { Printed, Lax };

inline const char* to_string(DispersionMode m) {
    return m == DispersionMode::Printed ? "printed" : "lax";
}

enum class GaugeMode { Verbatim, GaugeFixed };

inline const char* to_string(GaugeMode m) {
    return m == GaugeMode::Verbatim ? "verbatim" : "gauge_fixed";
}

}  // namespace gfonls
