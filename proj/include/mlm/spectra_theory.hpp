#ifndef MLM_SPECTRA_THEORY_HPP
#define MLM_SPECTRA_THEORY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlm/extended_real.hpp"

namespace mlm {

enum class SpectrumKind { hausdorff, large_deviation, legendre };
enum class SpectrumOrigin { theoretical, empirical };

// A spectrum curve on an increasing h- or beta-grid, values possibly -inf.
struct SpectrumCurve {
    SpectrumKind kind = SpectrumKind::hausdorff;
    SpectrumOrigin origin = SpectrumOrigin::theoretical;
    std::vector<double> grid;
    std::vector<ExtendedReal> values;
    std::vector<bool> reliable;  // empirical curves only; empty otherwise
    double c = 0.0, d = 0.0, min_set_dimension = 0.0;
    std::string meta;

    void check_invariants() const {
        if (grid.size() != values.size())
            throw std::domain_error("spectrum grid/value size mismatch");
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (!(grid[i] > grid[i - 1]))
                throw std::domain_error("spectrum grid must be strictly increasing");
    }
};

inline void require_cd(double c, double d) {
    if (!(1.0 < c && c <= d && d < 2.0))
        throw std::domain_error("spectrum parameters require 1 < c <= d < 2");
}

// Hausdorff multifractal spectrum of B and D. Piecewise:
//   -inf (h<0) | h d on [0,1/d] | 1 on (1/d,1/c) | min-set dim at 1/c | -inf.
// At h = 1/c the min-set dimension wins, including the degenerate c = d case
// (where alpha is constant and that dimension is 1).
inline ExtendedReal hausdorff_spectrum(double c, double d, double min_set_dimension,
                                       double h) {
    require_cd(c, d);
    if (!(min_set_dimension >= 0.0 && min_set_dimension <= 1.0))
        throw std::domain_error("min_set_dimension must lie in [0,1]");
    if (h < 0.0) return ExtendedReal::minus_infinity();
    if (h == 1.0 / c) return min_set_dimension;
    if (h <= 1.0 / d) return h * d;
    if (h < 1.0 / c) return 1.0;
    return ExtendedReal::minus_infinity();
}

// Large-deviation (= Legendre) spectrum of B:
//   -inf (beta<0) | beta d on [0,1/d] | 1 on (1/d,1/c] | 1+1/c-beta on
//   (1/c,1+1/c] | -inf beyond.
inline ExtendedReal large_deviation_spectrum_theoretical(double c, double d,
                                                         double beta) {
    require_cd(c, d);
    if (beta < 0.0) return ExtendedReal::minus_infinity();
    if (beta <= 1.0 / d) return beta * d;
    if (beta <= 1.0 / c) return 1.0;
    if (beta <= 1.0 + 1.0 / c) return 1.0 + 1.0 / c - beta;
    return ExtendedReal::minus_infinity();
}

inline SpectrumCurve hausdorff_curve(double c, double d, double min_set_dimension,
                                     const std::vector<double>& h_grid) {
    SpectrumCurve curve;
    curve.kind = SpectrumKind::hausdorff;
    curve.origin = SpectrumOrigin::theoretical;
    curve.grid = h_grid;
    curve.c = c;
    curve.d = d;
    curve.min_set_dimension = min_set_dimension;
    for (double h : h_grid)
        curve.values.push_back(hausdorff_spectrum(c, d, min_set_dimension, h));
    curve.check_invariants();
    return curve;
}

inline SpectrumCurve large_deviation_curve(double c, double d,
                                           const std::vector<double>& beta_grid) {
    SpectrumCurve curve;
    curve.kind = SpectrumKind::large_deviation;
    curve.origin = SpectrumOrigin::theoretical;
    curve.grid = beta_grid;
    curve.c = c;
    curve.d = d;
    for (double b : beta_grid)
        curve.values.push_back(large_deviation_spectrum_theoretical(c, d, b));
    curve.check_invariants();
    return curve;
}

// Upper concave envelope over the finite-support region; -inf outside the
// convex hull of the finite support.
inline SpectrumCurve concave_hull(const SpectrumCurve& curve) {
    curve.check_invariants();
    std::vector<std::size_t> finite;
    for (std::size_t i = 0; i < curve.values.size(); ++i)
        if (curve.values[i].is_finite()) finite.push_back(i);
    if (finite.empty())
        throw std::domain_error("concave_hull needs at least one finite value");

    // Monotone-chain upper hull of the finite points.
    std::vector<std::size_t> hull;
    auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
        double ox = curve.grid[o], oy = curve.values[o].finite_value();
        double ax = curve.grid[a], ay = curve.values[a].finite_value();
        double bx = curve.grid[b], by = curve.values[b].finite_value();
        return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox);
    };
    for (std::size_t idx : finite) {
        while (hull.size() >= 2 &&
               cross(hull[hull.size() - 2], hull.back(), idx) >= 0.0)
            hull.pop_back();
        hull.push_back(idx);
    }

    SpectrumCurve out = curve;
    out.meta = "concave hull";
    double lo = curve.grid[finite.front()], hi = curve.grid[finite.back()];
    std::size_t seg = 0;
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        double x = curve.grid[i];
        if (x < lo || x > hi) {
            out.values[i] = ExtendedReal::minus_infinity();
            continue;
        }
        while (seg + 1 < hull.size() && curve.grid[hull[seg + 1]] < x) ++seg;
        std::size_t a = hull[seg];
        std::size_t b = hull[std::min(seg + 1, hull.size() - 1)];
        double xa = curve.grid[a], xb = curve.grid[b];
        double ya = curve.values[a].finite_value(), yb = curve.values[b].finite_value();
        out.values[i] = (xb == xa) ? ya : ya + (yb - ya) * (x - xa) / (xb - xa);
    }
    return out;
}

// Chernoff exponent H(t) = lambda t - log(1 - p + p e^t).
struct ChernoffParams {
    double lambda;
    double p;
    ChernoffParams(double lambda_, double p_) : lambda(lambda_), p(p_) {
        if (!(lambda > 0.0 && lambda < 1.0 && p > 0.0 && p < 1.0))
            throw std::domain_error("Chernoff parameters must lie in (0,1)");
    }
};

inline double chernoff_H(const ChernoffParams& params, double t) {
    return params.lambda * t - std::log1p(params.p * std::expm1(t));
}

enum class ChernoffSide { positive_t, negative_t };

struct ChernoffSup {
    double value;  // KL-type closed form
    double t0;     // maximizer log(lambda(1-p)/(p(1-lambda)))
};

// sup over t > 0 (resp. t < 0) of H; closed form is the Bernoulli KL
// divergence between lambda and p.
inline ChernoffSup chernoff_sup(const ChernoffParams& params, ChernoffSide side) {
    const double lambda = params.lambda, p = params.p;
    if (side == ChernoffSide::positive_t && !(p < lambda))
        throw std::domain_error("positive side requires p < lambda");
    if (side == ChernoffSide::negative_t && !(lambda < p))
        throw std::domain_error("negative side requires lambda < p");
    ChernoffSup result;
    result.value = lambda * std::log(lambda / p) +
                   (1.0 - lambda) * std::log((1.0 - lambda) / (1.0 - p));
    result.t0 = std::log(lambda * (1.0 - p) / (p * (1.0 - lambda)));
    return result;
}

// Numeric check of one of the asymptotic Chernoff bound variants at a concrete n.
// Lemmas about products are compared in log scale so nothing underflows.
enum class ChernoffBoundKind { PR3, PR4, PR5, PR6 };

struct ChernoffBoundCheck {
    double lhs;   // PR3/PR4: sup H; PR5/PR6: log of the infimum
    double rhs;   // matching side of the stated inequality (same scale)
    bool holds;
};

struct ChernoffAsymptoticParams {
    double a = 0.0, b = 0.0;
    double K = 1.0;            // PR3 / PR5
    double K1 = 1.0, K2 = 1.0; // PR4 / PR6
    double K_U = 1.0;          // PR6
};

inline ChernoffBoundCheck chernoff_asymptotic_bounds(ChernoffBoundKind kind,
                                                     const ChernoffAsymptoticParams& ap,
                                                     double n) {
    ChernoffBoundCheck out{};
    const double log_n = std::log(n);
    switch (kind) {
        case ChernoffBoundKind::PR3:
        case ChernoffBoundKind::PR5: {
            if (!(0.0 > ap.a && ap.a > ap.b))
                throw std::domain_error("PR3/PR5 require 0 > a > b");
            ChernoffParams cp(std::pow(n, ap.a), ap.K * std::pow(n, ap.b));
            double sup = chernoff_sup(cp, ChernoffSide::positive_t).value;
            if (kind == ChernoffBoundKind::PR3) {
                out.lhs = sup;
                out.rhs = 0.5 * (ap.a - ap.b) * std::pow(n, ap.a) * log_n;
                out.holds = out.lhs >= out.rhs;
            } else {
                out.lhs = -n * sup;
                out.rhs = -0.5 * (ap.a - ap.b) * std::pow(n, 1.0 + ap.a) * log_n;
                out.holds = out.lhs <= out.rhs;
            }
            break;
        }
        case ChernoffBoundKind::PR4: {
            if (!(0.0 > ap.b && ap.b > ap.a))
                throw std::domain_error("PR4 requires 0 > b > a");
            ChernoffParams cp(ap.K2 * std::pow(n, ap.a), ap.K1 * std::pow(n, ap.b));
            out.lhs = chernoff_sup(cp, ChernoffSide::negative_t).value;
            out.rhs = 0.25 * ap.K1 * std::pow(n, ap.b);
            out.holds = out.lhs >= out.rhs;
            break;
        }
        case ChernoffBoundKind::PR6: {
            if (!(0.0 > ap.b && ap.b > ap.a))
                throw std::domain_error("PR6 requires 0 > b > a");
            // Exponent rescaled by K_U before taking the supremum.
            ChernoffParams cp(ap.K2 * std::pow(n, ap.a) / ap.K_U,
                              ap.K1 * std::pow(n, ap.b));
            double sup = chernoff_sup(cp, ChernoffSide::negative_t).value;
            out.lhs = -ap.K_U * n * sup;
            out.rhs = -0.25 * ap.K1 * ap.K_U * std::pow(n, 1.0 + ap.b);
            out.holds = out.lhs <= out.rhs;
            break;
        }
    }
    return out;
}

}  // namespace mlm

#endif  // MLM_SPECTRA_THEORY_HPP
