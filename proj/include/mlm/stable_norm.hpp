#ifndef MLM_STABLE_NORM_HPP
#define MLM_STABLE_NORM_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mlm/quadrature.hpp"

namespace mlm {

// Normalization constant of the shot-noise series,
// C_u = (int_0^inf x^{-u} sin x dx)^{-1}.
// The integral has the closed form Gamma(1-u) cos(pi u / 2); the Gamma of a
// negative argument is taken through the recurrence Gamma(1-u) = Gamma(2-u)/(1-u).
inline double stable_norm_constant(double u) {
    if (!(u > 1.0 && u < 2.0))
        throw std::domain_error("stable_norm_constant requires u in (1,2)");
    double integral = std::tgamma(2.0 - u) / (1.0 - u) *
                      std::cos(1.5707963267948966 * u);
    return 1.0 / integral;
}

inline double stable_norm_root(double u) {
    return std::pow(stable_norm_constant(u), 1.0 / u);
}

// Canonical smooth compactly supported bump, exp(1 - 1/(1-x^2)) on (-1,1).
inline double bump(double x) {
    if (!(std::abs(x) < 1.0)) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - x * x));
}

// Real Fourier transform of the bump, int_{-1}^{1} bump(x) cos(xi x) dx.
// The oscillation count sets the panel budget.
inline double bump_fourier(double xi) {
    double axi = std::abs(xi);
    int panels = std::max(8, static_cast<int>(axi / 1.5) + 2);
    auto f = [axi](double x) { return bump(x) * std::cos(axi * x); };
    double h = 2.0 / panels;
    double coarse = 0.0, fine = 0.0;
    for (int i = 0; i < panels; ++i)
        coarse += gauss16(f, -1.0 + i * h, -1.0 + (i + 1) * h);
    for (int i = 0; i < 2 * panels; ++i)
        fine += gauss16(f, -1.0 + i * h / 2, -1.0 + (i + 1) * h / 2);
    if (std::abs(fine - coarse) > 1e-10 + 1e-9 * std::abs(fine))
        throw std::runtime_error("bump_fourier quadrature did not stabilize");
    return fine;
}

namespace detail {

// Single-resolution variant of bump_fourier for bulk cache fill.
inline double bump_fourier_fast(double xi) {
    double axi = std::abs(xi);
    int panels = 2 * (std::max(8, static_cast<int>(axi / 1.5) + 2));
    auto f = [axi](double x) { return bump(x) * std::cos(axi * x); };
    double h = 2.0 / panels, s = 0.0;
    for (int i = 0; i < panels; ++i)
        s += gauss16(f, -1.0 + i * h, -1.0 + (i + 1) * h);
    return s;
}

// Shared Gauss nodes for the F(beta) integral over [0, eta_max], split into
// half-period blocks so the cos factor never straddles a sign change badly.
struct SchellingNodes {
    std::vector<double> eta;
    std::vector<double> weight_times_phi_hat_cos;
    double eta_max;
};

inline const SchellingNodes& schelling_nodes() {
    static const SchellingNodes cached = [] {
        SchellingNodes s;
        const double pi = 3.14159265358979323846;
        // Grow eta_max until the last half-period block of
        // eta^2 |phi_hat(eta)| is below 1e-12 or phi_hat has sunk below the
        // quadrature noise floor; phi_hat decays faster than any polynomial,
        // so the remaining tail is smaller still.
        int blocks = 64;
        for (;;) {
            double eta_mid = (blocks - 0.5) * pi;
            double phim = std::abs(bump_fourier_fast(eta_mid));
            if (pi * eta_mid * eta_mid * phim < 1e-12 || phim < 1e-13) break;
            blocks *= 2;
            if (blocks > (1 << 14))
                throw std::runtime_error("schelling tail bound failure");
        }
        s.eta_max = blocks * pi;
        // Graded panels near 0, where eta^beta has unbounded derivatives,
        // then one panel per half period.
        std::vector<std::pair<double, double>> intervals;
        double edge = pi / 1024.0;
        intervals.emplace_back(0.0, edge);
        while (edge < pi - 1e-15) {
            double next = std::min(pi, 2.0 * edge);
            intervals.emplace_back(edge, next);
            edge = next;
        }
        for (int b = 1; b < blocks; ++b) intervals.emplace_back(b * pi, (b + 1) * pi);
        for (auto [a, c] : intervals) {
            double mid = 0.5 * (a + c), half = 0.5 * (c - a);
            for (int k = 7; k >= 0; --k) {
                for (int sgn : {-1, +1}) {
                    double e = mid + sgn * half * GL16::nodes[k];
                    s.eta.push_back(e);
                    s.weight_times_phi_hat_cos.push_back(
                        half * GL16::weights[k] * bump_fourier_fast(e) * std::cos(e));
                }
            }
        }
        return s;
    }();
    return cached;
}

}  // namespace detail

// F(beta) = -int_0^inf eta^beta cos(eta) phi_hat(eta) d eta. Positive for
// beta > 0 with the canonical bump.
inline double schelling_F(double beta) {
    if (!(beta > 0.0)) throw std::domain_error("schelling_F requires beta > 0");
    const auto& s = detail::schelling_nodes();
    double sum = 0.0;
    for (std::size_t k = 0; k < s.eta.size(); ++k)
        sum += std::pow(s.eta[k], beta) * s.weight_times_phi_hat_cos[k];
    return -sum;
}

}  // namespace mlm

#endif  // MLM_STABLE_NORM_HPP
