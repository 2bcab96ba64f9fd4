#ifndef MLM_QUADRATURE_HPP
#define MLM_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace mlm {

namespace detail {

// 16-point Gauss-Legendre nodes/weights on [-1,1].
struct GL16 {
    static constexpr std::array<double, 8> nodes = {
        0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
        0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
        0.9445750230732326, 0.9894009349916499};
    static constexpr std::array<double, 8> weights = {
        0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
        0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
        0.0622535239386479, 0.0271524594117541};
};

}  // namespace detail

// Gauss-Legendre on [a,b].
template <class F>
double gauss16(F&& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t k = 0; k < 8; ++k) {
        double x = half * detail::GL16::nodes[k];
        sum += detail::GL16::weights[k] * (f(mid - x) + f(mid + x));
    }
    return half * sum;
}

// Composite Gauss-Legendre with panel doubling until two successive
// refinements agree.
template <class F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-12,
                 double abs_tol = 1e-14, int max_doublings = 16) {
    int panels = 4;
    auto composite = [&](int m) {
        double h = (b - a) / m, s = 0.0;
        for (int i = 0; i < m; ++i) s += gauss16(f, a + i * h, a + (i + 1) * h);
        return s;
    };
    double prev = composite(panels);
    for (int k = 0; k < max_doublings; ++k) {
        panels *= 2;
        double cur = composite(panels);
        if (std::abs(cur - prev) <=
            std::max(abs_tol, rel_tol * std::abs(cur)))
            return cur;
        prev = cur;
    }
    throw std::runtime_error("quadrature did not converge");
}

}  // namespace mlm

#endif  // MLM_QUADRATURE_HPP
