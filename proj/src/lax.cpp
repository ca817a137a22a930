#include "gfonls/lax.hpp"

#include <cmath>

#include "gfonls/spectral.hpp"

namespace gfonls::lax {

namespace {
const cplx I{0.0, 1.0};

Matrix2c sigma3() {
    Matrix2c s;
    s << 1.0, 0.0, 0.0, -1.0;
    return s;
}

Matrix2c qmat(const ModelParams& p) {
    Matrix2c q;
    q << 0.0, p.psi_minus, -std::conj(p.psi_minus), 0.0;
    return q;
}
}  // namespace

Matrix2c build_U_boundary(cplx z, const ModelParams& p) {
    spectral::require_nonzero(z);
    const cplx k = spectral::k_of_z(z, p);
    return I * k * sigma3() + qmat(p);
}

Matrix2c build_V_boundary(cplx z, const ModelParams& p) {
    spectral::require_nonzero(z);
    const cplx k = spectral::k_of_z(z, p);
    const double s2 = p.psi0 * p.psi0;
    const double s4 = s2 * s2;
    const Matrix2c s3 = sigma3();
    const Matrix2c Q = qmat(p);
    const Matrix2c Id = Matrix2c::Identity();

    const Matrix2c U = I * k * s3 + Q;

    // D_NLS = -2kU + i s3 (Qx - Q^2 - psi0^2);  Qx - Q^2 - psi0^2 I = 0 here
    const Matrix2c d_nls = -2.0 * k * U;

    // D_MKdV = -2k(D_NLS + i psi0^2 s3) - [Q,Qx] - Qxx + 2Q^3,  Q^3 = -psi0^2 Q
    const Matrix2c d_mkdv = -2.0 * k * (d_nls + I * s2 * s3) - 2.0 * s2 * Q;

    // D_LPD = 2k[-(4ik^3 + k^2 Q + k V0) + L0] + M0
    const Matrix2c V0 = -0.5 * I * s2 * s3;
    const Matrix2c L0 = 2.0 * I * s2 * (s3 * Q);
    const Matrix2c M0 = -3.0 * I * s4 * s3;
    const Matrix2c d_lpd =
        2.0 * k * (-(4.0 * I * k * k * k * Id + k * k * Q + k * V0) + L0) + M0;

    // D_FOQ = -2k D_LPD + N0,  N0 = [[0, -n2*],[n2, 0]], n2 = 6i psi0^4 psi-^*
    const cplx n2 = 6.0 * I * s4 * std::conj(p.psi_minus);
    Matrix2c N0;
    N0 << 0.0, -std::conj(n2), n2, 0.0;
    const Matrix2c d_foq = -2.0 * k * d_lpd + N0;

    return p.alpha2 * d_nls + p.alpha3 * d_mkdv + p.alpha4 * d_lpd +
           p.alpha5 * d_foq + 3.0 * I * p.alpha4 * s3;
}

double commutator_defect(const Matrix2c& U, const Matrix2c& V) {
    const Matrix2c C = U * V - V * U;
    const double scale = U.cwiseAbs().maxCoeff() * V.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    return C.cwiseAbs().maxCoeff() / scale;
}

cplx omega_from_lax(cplx z, const ModelParams& p, bool require_commuting) {
    const cplx lam = spectral::lambda_of_z(z, p);
    if (std::abs(lam) < 1e-8)
        throw std::domain_error("omega_from_lax: branch point, |lambda| < 1e-8");

    const Matrix2c U = build_U_boundary(z, p);
    const Matrix2c V = build_V_boundary(z, p);
    if (require_commuting && commutator_defect(U, V) > 1e-10)
        throw std::runtime_error("omega_from_lax: [U,V] != 0 at this z");

    // E has U's eigenvectors as columns (+i lambda first); closed form since
    // k + lambda = z:  E = [[1, i psi-/z],[i psi-*/z, 1]].
    Matrix2c E;
    E << 1.0, I * p.psi_minus / z, I * std::conj(p.psi_minus) / z, 1.0;
    const Matrix2c W = E.inverse() * V * E;
    return W(0, 0) / (I * lam);
}

CalibrationResult calibrate(const ModelParams& p, const std::vector<cplx>& sample_points) {
    CalibrationResult out;
    out.reports.reserve(sample_points.size());
    const char* names[4] = {"alpha2", "alpha3", "alpha4", "alpha5"};

    for (cplx z : sample_points) {
        DispersionReport rep;
        rep.z = z;
        try {
            rep.omega_printed = spectral::dispersion_omega(z, p, DispersionMode::Printed);
            rep.omega_lax = omega_from_lax(z, p, /*require_commuting=*/false);
            rep.abs_discrepancy = std::abs(rep.omega_printed - rep.omega_lax);

            const double a[4] = {p.alpha2, p.alpha3, p.alpha4, p.alpha5};
            for (int j = 0; j < 4; ++j) {
                if (a[j] == 0.0) continue;
                ModelParams iso = p;
                iso.alpha2 = iso.alpha3 = iso.alpha4 = iso.alpha5 = 0.0;
                (j == 0 ? iso.alpha2 : j == 1 ? iso.alpha3
                                     : j == 2 ? iso.alpha4 : iso.alpha5) = a[j];
                TermReport tr;
                tr.term = names[j];
                tr.omega_printed = spectral::dispersion_omega(z, iso, DispersionMode::Printed);
                tr.omega_lax = omega_from_lax(z, iso, /*require_commuting=*/false);
                tr.abs_discrepancy = std::abs(tr.omega_printed - tr.omega_lax);
                tr.commutator_defect =
                    commutator_defect(build_U_boundary(z, iso), build_V_boundary(z, iso));
                rep.per_term.push_back(tr);
            }
        } catch (const std::exception& e) {
            rep.error = e.what();
        }
        out.max_discrepancy = std::max(out.max_discrepancy, rep.abs_discrepancy);
        out.reports.push_back(std::move(rep));
    }
    out.verdict = out.max_discrepancy < 1e-8 ? "printed-consistent" : "printed-inconsistent";
    return out;
}

}  // namespace gfonls::lax
