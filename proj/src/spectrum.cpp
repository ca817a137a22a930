#include "gfonls/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gfonls/spectral.hpp"

namespace gfonls::spectrum {

namespace {

std::string fmt(cplx z) {
    std::ostringstream os;
    os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
    return os.str();
}

template <typename Entry>
std::vector<std::string> validate_eigenvalues(const std::vector<Entry>& entries,
                                              const ModelParams& p) {
    std::vector<std::string> v;
    const std::size_t n = entries.size();
    for (std::size_t i = 0; i < n; ++i) {
        const cplx z = entries[i].z;
        const std::string tag = "z" + std::to_string(i + 1) + "=" + fmt(z);
        if (std::abs(z) <= p.psi0)
            v.push_back(tag + ": |z| <= psi0 (outside fundamental domain)");
        if (!(z.imag() > 0.0))
            v.push_back(tag + ": Im z <= 0 (outside fundamental domain)");
        if (entries[i].A_plus == cplx{0.0, 0.0})
            v.push_back(tag + ": norming constant A+ must be nonzero");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(z - entries[j].z) < kCollisionTol)
                v.push_back(tag + ": collides with z" + std::to_string(j + 1));
        }
        for (std::size_t j = 0; j < n; ++j) {
            // z_i == -psi0^2 / z_j^* degenerates the quadruple
            const cplx img = -p.psi0 * p.psi0 / std::conj(entries[j].z);
            if (std::abs(z - img) < kCollisionTol)
                v.push_back(tag + ": coincides with the symmetry image of z" +
                            std::to_string(j + 1));
        }
    }
    return v;
}

template <typename Spec>
void throw_if_invalid(const Spec& s, const ModelParams& p) {
    auto v = validate(s, p);
    if (v.empty()) return;
    std::string msg = "invalid discrete spectrum:";
    for (const auto& line : v) msg += "\n  - " + line;
    throw std::invalid_argument(msg);
}

}  // namespace

std::vector<std::string> validate(const SimpleSpectrum& s, const ModelParams& p) {
    return validate_eigenvalues(s.entries, p);
}

std::vector<std::string> validate(const DoubleSpectrum& s, const ModelParams& p) {
    return validate_eigenvalues(s.entries, p);
}

ExpandedSpectrum expand_simple(const SimpleSpectrum& s, const ModelParams& p) {
    throw_if_invalid(s, p);
    const std::size_t N = s.entries.size();
    ExpandedSpectrum es;
    es.pole_order = PoleOrder::Simple;
    es.xi.resize(2 * N);
    es.xi_hat.resize(2 * N);
    es.A_minus_hat.resize(2 * N);
    const double s2 = p.psi0 * p.psi0;
    for (std::size_t n = 0; n < N; ++n) {
        const cplx z = s.entries[n].z;
        const cplx A = s.entries[n].A_plus;
        es.xi[n] = z;
        es.xi[N + n] = -s2 / std::conj(z);
        es.A_minus_hat[n] = (p.psi_minus * p.psi_minus / (z * z)) * A;
        es.A_minus_hat[N + n] = -std::conj(A);
    }
    for (std::size_t n = 0; n < 2 * N; ++n) es.xi_hat[n] = -s2 / es.xi[n];
    return es;
}

ExpandedSpectrum expand_double(const DoubleSpectrum& s, const ModelParams& p) {
    throw_if_invalid(s, p);
    const std::size_t N = s.entries.size();
    ExpandedSpectrum es;
    es.pole_order = PoleOrder::Double;
    es.xi.resize(2 * N);
    es.xi_hat.resize(2 * N);
    es.A_minus_hat.resize(2 * N);
    es.B_minus_hat.resize(2 * N);
    const double s2 = p.psi0 * p.psi0;
    const double s4 = s2 * s2;
    for (std::size_t n = 0; n < N; ++n) {
        const cplx z = s.entries[n].z;
        const cplx A = s.entries[n].A_plus;
        const cplx B = s.entries[n].B_plus;
        es.xi[n] = z;
        es.xi[N + n] = -s2 / std::conj(z);
        es.A_minus_hat[n] = (s4 * p.psi_minus / (z * z * z * z * std::conj(p.psi_minus))) * A;
        es.A_minus_hat[N + n] = -std::conj(A);
        es.B_minus_hat[n] = (z * z / s2) * (B - 2.0 / z);
        es.B_minus_hat[N + n] = std::conj(B);
    }
    for (std::size_t n = 0; n < 2 * N; ++n) es.xi_hat[n] = -s2 / es.xi[n];
    return es;
}

double reduce_mod_2pi(double angle) {
    const double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(angle, two_pi);
    if (r < 0.0) r += two_pi;
    // snap exact multiples back to 0
    if (std::abs(r - two_pi) < 1e-14) r = 0.0;
    return r;
}

double theta_condition_raw(const SimpleSpectrum& s) {
    double sum = 0.0;
    for (const auto& e : s.entries) sum += std::arg(e.z);
    return 4.0 * sum;
}

double theta_condition_raw(const DoubleSpectrum& s) {
    double sum = 0.0;
    for (const auto& e : s.entries) sum += std::arg(e.z);
    return 8.0 * sum;
}

double theta_condition(const SimpleSpectrum& s) {
    return reduce_mod_2pi(theta_condition_raw(s));
}

double theta_condition(const DoubleSpectrum& s) {
    return reduce_mod_2pi(theta_condition_raw(s));
}

}  // namespace gfonls::spectrum
