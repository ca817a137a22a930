#include "gfonls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>

namespace gfonls::verify {

namespace {
const cplx I{0.0, 1.0};

// Fornberg-style weights for the m-th derivative at x=0 from integer
// offsets, via the (well-conditioned for our small windows) Vandermonde solve.
std::vector<double> stencil_weights(const std::vector<double>& offsets, int m) {
    const int p = static_cast<int>(offsets.size());
    Eigen::MatrixXd A(p, p);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(p);
    for (int r = 0; r < p; ++r)
        for (int c = 0; c < p; ++c)
            A(r, c) = std::pow(offsets[c], r);
    double fact = 1.0;
    for (int j = 2; j <= m; ++j) fact *= j;
    b(m) = fact;
    Eigen::VectorXd wv = A.fullPivLu().solve(b);
    return {wv.data(), wv.data() + p};
}

int interior_width(int m) { return (m % 2 == 1) ? m + 4 : m + 3; }

// per-row weights: interior symmetric window, shifted (m+4)-window at edges
struct AxisStencil {
    int n = 0;
    int m = 0;
    std::vector<std::vector<double>> w;   // weights per node
    std::vector<int> lo;                  // window start per node

    AxisStencil(int n_, int m_, double h) : n(n_), m(m_) {
        const int wi = interior_width(m);
        const int hw = wi / 2;
        const int we = m + 4;
        if (n < we)
            throw std::invalid_argument("fd_derivative: grid too small for requested order");
        const double hm = std::pow(h, m);
        w.resize(n);
        lo.resize(n);
        std::vector<double> off;
        for (int i = 0; i < n; ++i) {
            int l, p;
            if (i - hw >= 0 && i + hw < n) {
                l = i - hw;
                p = wi;
            } else {
                l = std::clamp(i - we / 2, 0, n - we);
                p = we;
            }
            off.resize(p);
            for (int j = 0; j < p; ++j) off[j] = double(l + j - i);
            auto ws = stencil_weights(off, m);
            for (auto& x : ws) x /= hm;
            w[i] = std::move(ws);
            lo[i] = l;
        }
    }
};

GridArray like(const GridArray& g) {
    GridArray out;
    out.nx = g.nx;
    out.nt = g.nt;
    out.a.assign(g.a.size(), cplx{});
    return out;
}

GridArray derivative_impl(const GridArray& g, double h, Axis axis, int order) {
    if (order < 1 || order > 5)
        throw std::invalid_argument("fd_derivative: order must be in 1..5");
    GridArray out = like(g);
    if (axis == Axis::X) {
        AxisStencil st(g.nx, order, h);
        for (int j = 0; j < g.nt; ++j)
            for (int i = 0; i < g.nx; ++i) {
                cplx acc{};
                const auto& ws = st.w[i];
                const int l = st.lo[i];
                for (std::size_t q = 0; q < ws.size(); ++q)
                    acc += ws[q] * g.at(l + int(q), j);
                out.at(i, j) = acc;
            }
    } else {
        AxisStencil st(g.nt, order, h);
        for (int j = 0; j < g.nt; ++j) {
            const auto& ws = st.w[j];
            const int l = st.lo[j];
            for (int i = 0; i < g.nx; ++i) {
                cplx acc{};
                for (std::size_t q = 0; q < ws.size(); ++q)
                    acc += ws[q] * g.at(i, l + int(q));
                out.at(i, j) = acc;
            }
        }
    }
    return out;
}

GridArray from_field(const SolutionField& f) {
    GridArray g;
    g.nx = f.grid.nx;
    g.nt = f.grid.nt;
    g.a = f.values;
    return g;
}

struct Derivs {
    GridArray p, px, pxx, pxxx, px4, px5;
};

Derivs x_derivatives(const GridArray& g, double hx, int max_order) {
    Derivs d;
    d.p = g;
    d.px = derivative_impl(g, hx, Axis::X, 1);
    d.pxx = derivative_impl(g, hx, Axis::X, 2);
    if (max_order >= 3) d.pxxx = derivative_impl(g, hx, Axis::X, 3);
    if (max_order >= 4) d.px4 = derivative_impl(g, hx, Axis::X, 4);
    if (max_order >= 5) d.px5 = derivative_impl(g, hx, Axis::X, 5);
    return d;
}

GridArray k_operator(const Derivs& d, const ModelParams& p, KOperator which,
                     GaugeMode gauge, K4Form k4) {
    GridArray out = like(d.p);
    const double s2 = p.psi0 * p.psi0;
    const double s4 = s2 * s2;
    const std::size_t n = d.p.a.size();
    switch (which) {
        case KOperator::K2:
            for (std::size_t q = 0; q < n; ++q) {
                const cplx u = d.p.a[q];
                out.a[q] = d.pxx.a[q] + 2.0 * (std::norm(u) - s2) * u;
            }
            break;
        case KOperator::K3:
            for (std::size_t q = 0; q < n; ++q) {
                const cplx u = d.p.a[q];
                out.a[q] = d.pxxx.a[q] + 6.0 * std::norm(u) * d.px.a[q];
            }
            break;
        case KOperator::K4:
            for (std::size_t q = 0; q < n; ++q) {
                const cplx u = d.p.a[q];
                const cplx ux = d.px.a[q];
                const double m2 = std::norm(u);
                cplx v = d.px4.a[q] + 8.0 * m2 * d.pxx.a[q] + 6.0 * m2 * m2 * u +
                         6.0 * std::conj(u) * ux * ux +
                         2.0 * u * u * std::conj(d.pxx.a[q]);
                if (k4 == K4Form::Completed) v += 4.0 * u * std::norm(ux);
                if (gauge == GaugeMode::GaugeFixed) v -= 6.0 * s4 * u;
                out.a[q] = v;
            }
            break;
        case KOperator::K5:
            // (psi |psi_x|^2)_x expanded by the product rule on the grid
            for (std::size_t q = 0; q < n; ++q) {
                const cplx u = d.p.a[q];
                const cplx ux = d.px.a[q];
                const cplx uxx = d.pxx.a[q];
                const double m2 = std::norm(u);
                const cplx prod_x = ux * std::norm(ux) +
                                    u * (uxx * std::conj(ux) + ux * std::conj(uxx));
                out.a[q] = d.px5.a[q] + 10.0 * m2 * d.pxxx.a[q] + 10.0 * prod_x +
                           20.0 * std::conj(u) * ux * uxx + 30.0 * m2 * m2 * ux;
            }
            break;
    }
    return out;
}

int max_x_order(const ModelParams& p) {
    if (p.alpha5 != 0.0) return 5;
    if (p.alpha4 != 0.0) return 4;
    if (p.alpha3 != 0.0) return 3;
    return 2;
}
}  // namespace

GridArray fd_derivative(const GridArray& g, double h, Axis axis, int order) {
    return derivative_impl(g, h, axis, order);
}

GridArray fd_derivative(const SolutionField& field, Axis axis, int order) {
    const double h = axis == Axis::X ? field.grid.hx() : field.grid.ht();
    return derivative_impl(from_field(field), h, axis, order);
}

GridArray apply_K(const SolutionField& field, const ModelParams& p,
                  KOperator which, GaugeMode gauge, K4Form k4) {
    const int need = which == KOperator::K2   ? 2
                     : which == KOperator::K3 ? 3
                     : which == KOperator::K4 ? 4
                                              : 5;
    Derivs d = x_derivatives(from_field(field), field.grid.hx(), need);
    return k_operator(d, p, which, gauge, k4);
}

ResidualReport residual(const SolutionField& field, const ModelParams& p,
                        const ResidualOptions& opts) {
    ResidualReport rep;
    rep.hx = field.grid.hx();
    rep.ht = field.grid.ht();
    rep.gauge_mode = to_string(opts.gauge);
    rep.k4_form = to_string(opts.k4);
    rep.gamma = 6.0 * p.alpha4 * std::pow(p.psi0, 4);

    const GridArray g = from_field(field);
    const GridArray pt = derivative_impl(g, rep.ht, Axis::T, 1);
    Derivs d = x_derivatives(g, rep.hx, max_x_order(p));

    GridArray k2 = k_operator(d, p, KOperator::K2, opts.gauge, opts.k4);
    GridArray k3, k4g, k5;
    if (p.alpha3 != 0.0) k3 = k_operator(d, p, KOperator::K3, opts.gauge, opts.k4);
    if (p.alpha4 != 0.0) k4g = k_operator(d, p, KOperator::K4, opts.gauge, opts.k4);
    if (p.alpha5 != 0.0) k5 = k_operator(d, p, KOperator::K5, opts.gauge, opts.k4);

    // stencil-trimmed interior: shifted edge windows span order+4 nodes
    const int mx = max_x_order(p);
    rep.trim_x = std::min(mx + 4, std::max(0, field.grid.nx / 2 - 1));
    rep.trim_t = std::min(5, std::max(0, field.grid.nt / 2 - 1));

    double sup = 0.0, l2 = 0.0;
    std::size_t count = 0;
    for (int j = rep.trim_t; j < field.grid.nt - rep.trim_t; ++j) {
        for (int i = rep.trim_x; i < field.grid.nx - rep.trim_x; ++i) {
            const cplx t_term = I * pt.at(i, j);
            const cplx c2 = p.alpha2 * k2.at(i, j);
            const cplx c3 = p.alpha3 != 0.0 ? -I * p.alpha3 * k3.at(i, j) : cplx{};
            const cplx c4 = p.alpha4 != 0.0 ? p.alpha4 * k4g.at(i, j) : cplx{};
            const cplx c5 = p.alpha5 != 0.0 ? -I * p.alpha5 * k5.at(i, j) : cplx{};
            const cplx r = t_term + c2 + c3 + c4 + c5;
            const double ar = std::abs(r);
            sup = std::max(sup, ar);
            l2 += ar * ar;
            ++count;
            rep.term_time = std::max(rep.term_time, std::abs(t_term));
            rep.term_k2 = std::max(rep.term_k2, std::abs(c2));
            rep.term_k3 = std::max(rep.term_k3, std::abs(c3));
            rep.term_k4 = std::max(rep.term_k4, std::abs(c4));
            rep.term_k5 = std::max(rep.term_k5, std::abs(c5));
        }
    }
    rep.sup_norm = sup;
    rep.l2_norm = count ? std::sqrt(l2 / double(count)) : 0.0;
    return rep;
}

double boundary_check(const SolutionField& field, const ModelParams& p) {
    double worst = 0.0;
    for (int j = 0; j < field.grid.nt; ++j) {
        worst = std::max(worst, std::abs(std::abs(field.at(0, j)) - p.psi0));
        worst = std::max(worst,
                         std::abs(std::abs(field.at(field.grid.nx - 1, j)) - p.psi0));
    }
    return worst;
}

double phase_jump(const SolutionField& field) {
    const int jmid = field.grid.nt / 2;
    const double d = std::arg(field.at(field.grid.nx - 1, jmid)) -
                     std::arg(field.at(0, jmid));
    const double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(d, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

std::vector<cplx> integrate_short_time(const std::vector<cplx>& initial_row,
                                       const ModelParams& p, double hx,
                                       double t_final,
                                       const IntegrateOptions& opts) {
    const int n0 = static_cast<int>(initial_row.size());
    if (n0 < 16) throw std::invalid_argument("integrate_short_time: row too short");

    // widened working domain, filled with the background
    const int pad = std::max(8, int(std::lround(opts.widen_fraction * n0)));
    const int n = n0 + 2 * pad;
    std::vector<cplx> u(n, p.psi_minus);
    std::copy(initial_row.begin(), initial_row.end(), u.begin() + pad);

    // absorbing layer over the outer 10%: relax toward psi- with a smooth ramp
    const int lay = std::max(4, n / 10);
    std::vector<double> damp(n, 0.0);
    for (int i = 0; i < lay; ++i) {
        const double s = 1.0 - double(i) / lay;
        damp[i] = opts.damping_strength * s * s;
        damp[n - 1 - i] = opts.damping_strength * s * s;
    }

    // stability bound per active derivative order
    double dt = std::numeric_limits<double>::infinity();
    const double c_ord[4] = {0.35, 0.15, 0.05, 0.02};
    const double al[4] = {p.alpha2, p.alpha3, p.alpha4, p.alpha5};
    for (int j = 0; j < 4; ++j)
        if (al[j] != 0.0)
            dt = std::min(dt, c_ord[j] * std::pow(hx, j + 2) / std::abs(al[j]));
    if (!std::isfinite(dt))
        throw std::invalid_argument("integrate_short_time: all coefficients zero");
    dt *= opts.dt_safety;
    const int steps = std::max(1, int(std::ceil(t_final / dt)));
    dt = t_final / steps;

    const int mx = max_x_order(p);
    GridArray row;
    row.nx = n;
    row.nt = 1;

    double sup0 = 0.0;
    for (const cplx& v : u) sup0 = std::max(sup0, std::abs(v));

    auto rhs = [&](const std::vector<cplx>& y) {
        row.a = y;
        Derivs d = x_derivatives(row, hx, mx);
        // psi_t = i a2 K2 + a3 K3 + i a4 K4 + a5 K5 (gauge-fixed)
        std::vector<cplx> out(n, cplx{});
        GridArray k2 = k_operator(d, p, KOperator::K2, GaugeMode::GaugeFixed, opts.k4);
        for (int i = 0; i < n; ++i) out[i] += I * p.alpha2 * k2.a[i];
        if (p.alpha3 != 0.0) {
            GridArray k3 = k_operator(d, p, KOperator::K3, GaugeMode::GaugeFixed, opts.k4);
            for (int i = 0; i < n; ++i) out[i] += p.alpha3 * k3.a[i];
        }
        if (p.alpha4 != 0.0) {
            GridArray k4g = k_operator(d, p, KOperator::K4, GaugeMode::GaugeFixed, opts.k4);
            for (int i = 0; i < n; ++i) out[i] += I * p.alpha4 * k4g.a[i];
        }
        if (p.alpha5 != 0.0) {
            GridArray k5 = k_operator(d, p, KOperator::K5, GaugeMode::GaugeFixed, opts.k4);
            for (int i = 0; i < n; ++i) out[i] += p.alpha5 * k5.a[i];
        }
        for (int i = 0; i < n; ++i) out[i] -= damp[i] * (y[i] - p.psi_minus);
        return out;
    };

    std::vector<cplx> k1, k2v, k3v, k4v, tmp(n);
    for (int s = 0; s < steps; ++s) {
        k1 = rhs(u);
        for (int i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
        k2v = rhs(tmp);
        for (int i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k2v[i];
        k3v = rhs(tmp);
        for (int i = 0; i < n; ++i) tmp[i] = u[i] + dt * k3v[i];
        k4v = rhs(tmp);
        double sup = 0.0;
        for (int i = 0; i < n; ++i) {
            u[i] += dt / 6.0 * (k1[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
            sup = std::max(sup, std::abs(u[i]));
        }
        if (sup > 10.0 * sup0)
            throw std::runtime_error(
                "integrate_short_time: norm blow-up at step " + std::to_string(s) +
                " (sup " + std::to_string(sup) + ", initial " + std::to_string(sup0) + ")");
    }

    return {u.begin() + pad, u.begin() + pad + n0};
}

}  // namespace gfonls::verify
