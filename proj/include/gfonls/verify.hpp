#pragma once

// Independent truth source: finite-difference operators, the governing
// residual, boundary/phase diagnostics, and a short-time direct integrator.
//
// Residual operator:
//   R = i psi_t + a2 K2 - i a3 K3 + a4 K4 - i a5 K5
//   K2 = psi_xx + 2(|psi|^2 - psi0^2) psi
//   K3 = psi_xxx + 6|psi|^2 psi_x
//   K4 = psi_xxxx + 8|psi|^2 psi_xx + 6|psi|^4 psi + 6 psi^* psi_x^2
//        + 2 psi^2 psi_xx^*            (printed form)
//        [+ 4 psi |psi_x|^2]           (completed form; see below)
//        [- 6 psi0^4 psi]              (gauge_fixed)
//   K5 = psi_xxxxx + 10|psi|^2 psi_xxx + 10(psi |psi_x|^2)_x
//        + 20 psi^* psi_x psi_xx + 30|psi|^4 psi_x
//
// K4Form::Completed adds 4 psi |psi_x|^2, the term the integrable
// fourth-order flow carries (derived independently from the zero-curvature
// recursion and confirmed by 4th-order residual convergence of the engine
// output).  With the printed form the residual plateaus at
// |a4| sup|4 psi |psi_x|^2| under refinement; the defect is measured by
// the tests rather than hidden.  Completed + gauge_fixed is the certified
// verification target.

#include <optional>
#include <string>
#include <vector>

#include "gfonls/engine.hpp"
#include "gfonls/model.hpp"

namespace gfonls::verify {

using engine::SolutionField;

enum class Axis { X, T };
enum class K4Form { Printed, Completed };

inline const char* to_string(K4Form f) {
    return f == K4Form::Printed ? "printed" : "completed";
}

// complex scalar field sampled on the engine grid, row-major (t outer)
struct GridArray {
    int nx = 0, nt = 0;
    std::vector<cplx> a;
    cplx& at(int i, int j) { return a[std::size_t(j) * nx + i]; }
    cplx at(int i, int j) const { return a[std::size_t(j) * nx + i]; }
};

// 4th-order finite differences: symmetric interior stencils, shifted
// (order+4)-point windows near edges; exact on polynomials of degree
// <= order+3.  Requires >= order+4 points along the axis.
GridArray fd_derivative(const SolutionField& field, Axis axis, int order);
GridArray fd_derivative(const GridArray& g, double h, Axis axis, int order);

enum class KOperator { K2, K3, K4, K5 };

GridArray apply_K(const SolutionField& field, const ModelParams& p,
                  KOperator which, GaugeMode gauge,
                  K4Form k4 = K4Form::Printed);

struct ResidualOptions {
    GaugeMode gauge = GaugeMode::GaugeFixed;
    K4Form k4 = K4Form::Completed;
};

struct ResidualReport {
    double sup_norm = 0.0;
    double l2_norm = 0.0;
    double term_time = 0.0;   // sup norms of i psi_t and a_j K_j on the interior
    double term_k2 = 0.0;
    double term_k3 = 0.0;
    double term_k4 = 0.0;
    double term_k5 = 0.0;
    double hx = 0.0, ht = 0.0;
    std::string gauge_mode;
    std::string k4_form;
    double gamma = 0.0;       // 6 a4 psi0^4, the background rotation absorbed by the gauge
    int trim_x = 0, trim_t = 0;
    std::optional<double> convergence_order;
};

ResidualReport residual(const SolutionField& field, const ModelParams& p,
                        const ResidualOptions& opts = {});

// max over t of ||psi(x_edge, t)| - psi0| over both x edges
double boundary_check(const SolutionField& field, const ModelParams& p);

// arg psi(x_right, t_mid) - arg psi(x_left, t_mid), reduced to [0, 2pi)
double phase_jump(const SolutionField& field);

struct IntegrateOptions {
    double dt_safety = 1.0;          // scales the stability-bound step
    double damping_strength = 5.0;   // absorbing-layer relaxation rate
    double widen_fraction = 0.2;     // domain widening per side
    K4Form k4 = K4Form::Completed;
};

// Method-of-lines RK4 integration of the gauge-fixed equation from the given
// row, on a widened domain with an absorbing layer relaxing to psi-.
// dt obeys dt <= min_j c_j hx^j / |a_j| with c = {0.35, 0.15, 0.05, 0.02}
// for j = 2..5.  Throws on norm blow-up (> 10x initial sup).
std::vector<cplx> integrate_short_time(const std::vector<cplx>& initial_row,
                                       const ModelParams& p, double hx,
                                       double t_final,
                                       const IntegrateOptions& opts = {});

}  // namespace gfonls::verify
