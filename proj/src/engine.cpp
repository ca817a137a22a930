#include "gfonls/engine.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "gfonls/spectral.hpp"

namespace gfonls::engine {

namespace {
const cplx I{0.0, 1.0};

// e^{2 i theta} with the real part of the exponent clamped at +-700
cplx clamped_exp2itheta(cplx theta, bool& clamped) {
    cplx e = 2.0 * I * theta;
    if (std::abs(e.real()) > kExpClamp) {
        e.real(e.real() > 0 ? kExpClamp : -kExpClamp);
        clamped = true;
    }
    return std::exp(e);
}

double condition_from_lu(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu) {
    const double rc = lu.rcond();
    if (!(rc > 0.0)) return std::numeric_limits<double>::infinity();
    return 1.0 / rc;
}
}  // namespace

PointSystemSimple assemble_simple(double x, double t,
                                  const spectrum::ExpandedSpectrum& es,
                                  const ModelParams& p, DispersionMode mode) {
    const auto n2 = static_cast<Eigen::Index>(es.xi.size());
    if (n2 == 0) throw std::invalid_argument("assemble_simple: N >= 1 required");

    PointSystemSimple sys;
    sys.w.resize(n2);
    sys.v.resize(n2);
    sys.G.resize(n2, n2);
    for (Eigen::Index j = 0; j < n2; ++j) {
        const cplx th = spectral::theta(x, t, es.xi_hat[j], p, mode);
        sys.w(j) = es.A_minus_hat[j] * clamped_exp2itheta(th, sys.clamped);
        sys.v(j) = -I * p.psi_minus / es.xi[j];
    }
    for (Eigen::Index s = 0; s < n2; ++s)
        for (Eigen::Index j = 0; j < n2; ++j)
            sys.G(s, j) = sys.w(j) / (es.xi[s] - es.xi_hat[j]) +
                          (s == j ? sys.v(s) : cplx{});
    return sys;
}

PointValue psi_simple_point(double x, double t,
                            const spectrum::ExpandedSpectrum& es,
                            const ModelParams& p, const EngineModes& modes) {
    PointValue out;
    if (es.xi.empty()) {
        out.psi = p.psi_minus;
        return out;
    }
    PointSystemSimple sys = assemble_simple(x, t, es, p, modes.dispersion);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.G);
    out.condition_estimate = condition_from_lu(lu);
    const Eigen::VectorXcd y = lu.solve(sys.v);
    const cplx sum = sys.w.transpose() * y;   // w.y, unconjugated
    const cplx sigma = modes.sign == SignMode::Calibrated ? -I : I;
    out.psi = p.psi_minus + sigma * sum;
    out.flagged = sys.clamped || !(out.condition_estimate < kConditionLimit) ||
                  !std::isfinite(std::abs(out.psi));
    return out;
}

PointValue psi_simple_det_point(double x, double t,
                                const spectrum::ExpandedSpectrum& es,
                                const ModelParams& p, const EngineModes& modes) {
    PointValue out;
    const auto n2 = static_cast<Eigen::Index>(es.xi.size());
    if (n2 == 0) {
        out.psi = p.psi_minus;
        return out;
    }
    if (n2 > 12)
        throw std::invalid_argument("psi_simple_det_point: 2N > 12 exceeds the size guard");

    PointSystemSimple sys = assemble_simple(x, t, es, p, modes.dispersion);
    Eigen::MatrixXcd B(n2 + 1, n2 + 1);
    B.topLeftCorner(n2, n2) = sys.G;
    B.topRightCorner(n2, 1) = sys.v;
    B.bottomLeftCorner(1, n2) = sys.w.transpose();
    B(n2, n2) = 0.0;

    Eigen::PartialPivLU<Eigen::MatrixXcd> luG(sys.G);
    out.condition_estimate = condition_from_lu(luG);
    const cplx detG = luG.determinant();
    const cplx detB = Eigen::PartialPivLU<Eigen::MatrixXcd>(B).determinant();
    const cplx sigma = modes.sign == SignMode::Calibrated ? I : -I;
    out.psi = p.psi_minus + sigma * detB / detG;
    out.flagged = sys.clamped || !(out.condition_estimate < kConditionLimit) ||
                  !std::isfinite(std::abs(out.psi));
    return out;
}

PointSystemDouble assemble_double(double x, double t,
                                  const spectrum::ExpandedSpectrum& es,
                                  const ModelParams& p, DispersionMode mode) {
    const auto n2 = static_cast<Eigen::Index>(es.xi.size());
    if (n2 == 0) throw std::invalid_argument("assemble_double: N >= 1 required");
    if (es.B_minus_hat.size() != es.xi.size())
        throw std::invalid_argument("assemble_double: double-pole data required");

    PointSystemDouble sys;
    sys.w.resize(n2);
    sys.Dhat.resize(n2);
    Eigen::VectorXcd vi(n2);
    for (Eigen::Index j = 0; j < n2; ++j) {
        const cplx th = spectral::theta(x, t, es.xi_hat[j], p, mode);
        const cplx thp = spectral::theta_prime_z(x, t, es.xi_hat[j], p, mode);
        sys.w(j) = es.A_minus_hat[j] * clamped_exp2itheta(th, sys.clamped);
        sys.Dhat(j) = es.B_minus_hat[j] + 2.0 * I * thp;
        vi(j) = I * p.psi_minus / es.xi[j];
    }
    sys.H.resize(2 * n2, 2 * n2);
    sys.rhs.resize(2 * n2);
    for (Eigen::Index s = 0; s < n2; ++s) {
        const cplx xs = es.xi[s];
        for (Eigen::Index n = 0; n < n2; ++n) {
            const cplx dif = xs - es.xi_hat[n];
            const cplx C = sys.w(n) / dif;                    // Chat_n(xi_s)
            const cplx delta = (s == n) ? cplx{1.0, 0.0} : cplx{};
            sys.H(s, n) = C;
            sys.H(s, n2 + n) = C * (sys.Dhat(n) + 1.0 / dif) - vi(s) * delta;
            sys.H(n2 + s, n) =
                C / dif + (I * p.psi0 * p.psi0 * p.psi_minus / (xs * xs * xs)) * delta;
            sys.H(n2 + s, n2 + n) =
                (C / dif) * (sys.Dhat(n) + 2.0 / dif) - (vi(s) / xs) * delta;
        }
        sys.rhs(s) = -vi(s);
        sys.rhs(n2 + s) = -vi(s) / xs;
    }
    return sys;
}

PointValue psi_double_point(double x, double t,
                            const spectrum::ExpandedSpectrum& es,
                            const ModelParams& p, const EngineModes& modes) {
    PointValue out;
    if (es.xi.empty()) {
        out.psi = p.psi_minus;
        return out;
    }
    const auto n2 = static_cast<Eigen::Index>(es.xi.size());
    PointSystemDouble sys = assemble_double(x, t, es, p, modes.dispersion);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.H);
    out.condition_estimate = condition_from_lu(lu);
    const Eigen::VectorXcd sol = lu.solve(sys.rhs);
    cplx sum{};
    for (Eigen::Index n = 0; n < n2; ++n)
        sum += sys.w(n) * (sol(n) + sys.Dhat(n) * sol(n2 + n));
    const cplx sigma = modes.sign == SignMode::Calibrated ? -I : I;
    out.psi = p.psi_minus + sigma * sum;
    out.flagged = sys.clamped || !(out.condition_estimate < kConditionLimit) ||
                  !std::isfinite(std::abs(out.psi));
    return out;
}

PointValue psi_point(double x, double t, const spectrum::ExpandedSpectrum& es,
                     const ModelParams& p, const EngineModes& modes) {
    return es.pole_order == spectrum::PoleOrder::Simple
               ? psi_simple_point(x, t, es, p, modes)
               : psi_double_point(x, t, es, p, modes);
}

SolutionField evaluate_grid(const spectrum::ExpandedSpectrum& es,
                            const ModelParams& p, const Grid& grid,
                            const EngineModes& modes, int n_threads) {
    if (grid.nx < 1 || grid.nt < 1)
        throw std::invalid_argument("evaluate_grid: nx, nt >= 1 required");
    SolutionField f;
    f.grid = grid;
    f.values.assign(std::size_t(grid.nx) * grid.nt, cplx{});
    f.flags.assign(f.values.size(), 0);
    f.metadata.pole_order = es.pole_order;
    f.metadata.sign_convention = to_string(modes.sign);
    f.metadata.dispersion_mode = to_string(modes.dispersion);
    f.metadata.gauge_mode = to_string(modes.gauge);
    f.metadata.gamma = 6.0 * p.alpha4 * std::pow(p.psi0, 4);

    std::vector<double> cond_per_row(grid.nt, 0.0);
    std::vector<std::int64_t> flagged_per_row(grid.nt, 0);

    auto run_rows = [&](int j0, int j1) {
        for (int j = j0; j < j1; ++j) {
            for (int i = 0; i < grid.nx; ++i) {
                const PointValue pv = psi_point(grid.x(i), grid.t(j), es, p, modes);
                f.values[std::size_t(j) * grid.nx + i] = pv.psi;
                f.flags[std::size_t(j) * grid.nx + i] = pv.flagged ? 1 : 0;
                cond_per_row[j] = std::max(cond_per_row[j], pv.condition_estimate);
                flagged_per_row[j] += pv.flagged ? 1 : 0;
            }
        }
    };

    n_threads = std::max(1, n_threads);
    if (n_threads == 1 || grid.nt == 1) {
        run_rows(0, grid.nt);
    } else {
        std::vector<std::thread> pool;
        const int rows = grid.nt;
        const int chunk = (rows + n_threads - 1) / n_threads;
        for (int w = 0; w < n_threads; ++w) {
            const int j0 = w * chunk;
            const int j1 = std::min(rows, j0 + chunk);
            if (j0 >= j1) break;
            pool.emplace_back(run_rows, j0, j1);
        }
        for (auto& th : pool) th.join();
    }

    // associative/commutative merge keeps the result thread-count independent
    for (int j = 0; j < grid.nt; ++j) {
        f.metadata.max_condition = std::max(f.metadata.max_condition, cond_per_row[j]);
        f.metadata.flagged_points += flagged_per_row[j];
    }
    return f;
}

}  // namespace gfonls::engine
