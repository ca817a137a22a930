#pragma once

// Discrete spectral data: validation, symmetric expansion, theta condition.
//
// Eigenvalues live in the fundamental domain |z| > psi0, Im z > 0.  Each
// z_n generates the quadruple {z_n, -psi0^2/z_n^*, z_n^*, -psi0^2/z_n};
// the expansion lists xi_n (in D+) and xi_hat_n = -psi0^2/xi_n (in D-)
// together with the minus-side norming data obtained from the symmetry
// relations
//   simple:  A-[-psi0^2/z_n] = (psi-^2/z_n^2) A+[z_n],   A-[z_n^*] = -A+[z_n]^*
//   double:  A-[-psi0^2/z_n] = (psi0^4 psi- / (z_n^4 psi-^*)) A+[z_n],
//            A-[z_n^*] = -A+[z_n]^*,
//            B-[-psi0^2/z_n] = (z_n^2/psi0^2)(B+[z_n] - 2/z_n),
//            B-[z_n^*] = B+[z_n]^*.

#include <string>
#include <vector>

#include "gfonls/model.hpp"

namespace gfonls::spectrum {

enum class PoleOrder { Simple, Double };

inline const char* to_string(PoleOrder o) {
    return o == PoleOrder::Simple ? "simple" : "double";
}

struct SimpleEntry {
    cplx z;
    cplx A_plus;
};

struct DoubleEntry {
    cplx z;
    cplx A_plus;
    cplx B_plus;
};

struct SimpleSpectrum {
    std::vector<SimpleEntry> entries;
};

struct DoubleSpectrum {
    std::vector<DoubleEntry> entries;
};

struct ExpandedSpectrum {
    PoleOrder pole_order = PoleOrder::Simple;
    std::vector<cplx> xi;            // 2N points in D+
    std::vector<cplx> xi_hat;        // their involution images in D-
    std::vector<cplx> A_minus_hat;   // A-[xi_hat_n]
    std::vector<cplx> B_minus_hat;   // B-[xi_hat_n], double poles only
    std::size_t n_solitons() const { return xi.size() / 2; }
};

// Eigenvalue collision tolerance (also applied against symmetry images).
inline constexpr double kCollisionTol = 1e-8;

std::vector<std::string> validate(const SimpleSpectrum& s, const ModelParams& p);
std::vector<std::string> validate(const DoubleSpectrum& s, const ModelParams& p);

// Throw std::invalid_argument listing every violation if validation fails.
ExpandedSpectrum expand_simple(const SimpleSpectrum& s, const ModelParams& p);
ExpandedSpectrum expand_double(const DoubleSpectrum& s, const ModelParams& p);

// 4 sum arg z_n (simple) / 8 sum arg z_n (double); raw value, not reduced.
double theta_condition_raw(const SimpleSpectrum& s);
double theta_condition_raw(const DoubleSpectrum& s);

// reduced to [0, 2pi)
double theta_condition(const SimpleSpectrum& s);
double theta_condition(const DoubleSpectrum& s);

double reduce_mod_2pi(double angle);

}  // namespace gfonls::spectrum
