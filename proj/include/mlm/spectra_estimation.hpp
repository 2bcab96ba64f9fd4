#ifndef MLM_SPECTRA_ESTIMATION_HPP
#define MLM_SPECTRA_ESTIMATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mlm/alpha.hpp"
#include "mlm/shotnoise.hpp"
#include "mlm/spectra_theory.hpp"

namespace mlm {

// Coarse exponents e_{n,j} = log|X((j+1)/n) - X(j/n)| / (-log n) with
// exactly-zero increments masked rather than mapped to +inf.
struct CoarseExponentField {
    std::size_t n = 0;
    std::vector<double> exponents;
    std::vector<bool> zero_increment_mask;
};

inline CoarseExponentField coarse_exponents(const SamplePath& path, std::size_t n) {
    if (n == 0 || path.n % n != 0)
        throw std::domain_error("coarse resolution must divide the path resolution");
    const std::size_t stride = path.n / n;
    CoarseExponentField field;
    field.n = n;
    field.exponents.resize(n, 0.0);
    field.zero_increment_mask.resize(n, false);
    const double inv_log_n = 1.0 / std::log(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        double inc = path.values[(j + 1) * stride] - path.values[j * stride];
        if (inc == 0.0) {
            field.zero_increment_mask[j] = true;
        } else {
            field.exponents[j] = -std::log(std::fabs(inc)) * inv_log_n;
        }
    }
    return field;
}

inline std::size_t count_N(const CoarseExponentField& field, double beta, double eps) {
    if (!(eps > 0.0)) throw std::domain_error("eps must be positive");
    std::size_t count = 0;
    for (std::size_t j = 0; j < field.n; ++j)
        if (!field.zero_increment_mask[j] && std::fabs(field.exponents[j] - beta) <= eps)
            ++count;
    return count;
}

namespace detail {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
};

inline SlopeFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    const std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= n; my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    SlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

struct FgEstimate {
    ExtendedReal value = ExtendedReal::minus_infinity();
    bool reliable = false;
};

// One (beta, eps) estimate across resolutions: slope of log N vs log n over
// resolutions with at least one hit, with a leave-one-out minimum standing in
// for the liminf.
inline FgEstimate fg_at_eps(const std::vector<CoarseExponentField>& fields,
                            double beta, double eps) {
    std::vector<double> lx, ly;
    for (const auto& f : fields) {
        std::size_t cnt = count_N(f, beta, eps);
        if (cnt >= 1) {
            lx.push_back(std::log(static_cast<double>(f.n)));
            ly.push_back(std::log(static_cast<double>(cnt)));
        }
    }
    FgEstimate est;
    if (lx.empty()) {
        est.value = ExtendedReal::minus_infinity();
        est.reliable = true;
        return est;
    }
    if (lx.size() == 1) {
        est.value = ly[0] / lx[0];
        est.reliable = false;
        return est;
    }
    double full = least_squares(lx, ly).slope;
    if (lx.size() >= 3) {
        double lo = std::numeric_limits<double>::infinity();
        for (std::size_t skip = 0; skip < lx.size(); ++skip) {
            std::vector<double> sx, sy;
            for (std::size_t i = 0; i < lx.size(); ++i)
                if (i != skip) { sx.push_back(lx[i]); sy.push_back(ly[i]); }
            lo = std::min(lo, least_squares(sx, sy).slope);
        }
        full = lo;
    }
    est.value = full;
    est.reliable = true;
    return est;
}

}  // namespace detail

// Multi-resolution, shrinking-band estimator of the large-deviation spectrum.
// eps_schedule must be strictly decreasing; the reported value is the estimate
// at the smallest band width that agrees with the next wider one to 0.05,
// otherwise the smallest band's value flagged unreliable.
inline SpectrumCurve estimate_fg(const std::vector<CoarseExponentField>& fields,
                                 const std::vector<double>& beta_grid,
                                 const std::vector<double>& eps_schedule) {
    if (fields.size() < 4)
        throw std::domain_error("estimate_fg needs at least 4 resolutions");
    for (std::size_t i = 1; i < eps_schedule.size(); ++i)
        if (!(eps_schedule[i] < eps_schedule[i - 1]))
            throw std::domain_error("eps_schedule must be strictly decreasing");
    if (eps_schedule.empty() || !(eps_schedule.back() > 0.0))
        throw std::domain_error("eps_schedule must contain positive values");

    SpectrumCurve out;
    out.kind = SpectrumKind::large_deviation;
    out.origin = SpectrumOrigin::empirical;
    out.grid = beta_grid;
    out.meta = "multi-resolution band-count estimate";

    for (double beta : beta_grid) {
        std::vector<detail::FgEstimate> per_eps;
        for (double eps : eps_schedule)
            per_eps.push_back(detail::fg_at_eps(fields, beta, eps));

        auto close = [](const ExtendedReal& a, const ExtendedReal& b) {
            if (!a.is_finite() && !b.is_finite()) return true;
            if (a.is_finite() != b.is_finite()) return false;
            return std::fabs(a.finite_value() - b.finite_value()) < 0.05;
        };

        // Scan from the narrowest band upward looking for stabilization.
        std::size_t chosen = eps_schedule.size();  // sentinel: none stabilized
        for (std::size_t k = eps_schedule.size(); k-- > 1;) {
            if (per_eps[k].reliable && per_eps[k - 1].reliable &&
                close(per_eps[k].value, per_eps[k - 1].value)) {
                chosen = k;
                break;
            }
        }
        if (chosen < eps_schedule.size()) {
            out.values.push_back(per_eps[chosen].value);
            out.reliable.push_back(true);
        } else {
            out.values.push_back(per_eps.back().value);
            out.reliable.push_back(false);
        }
    }
    out.check_invariants();
    return out;
}

// tau(q) from the decay of the increment partition sums across resolutions.
struct TauCurve {
    std::vector<double> q_grid;
    std::vector<double> tau;
    std::vector<bool> reliable;
};

inline TauCurve partition_tau(const std::vector<SamplePath>& paths,
                              const std::vector<double>& q_grid) {
    if (paths.size() < 2)
        throw std::domain_error("partition_tau needs at least 2 resolutions");
    if (q_grid.empty() || q_grid.front() > -2.0 || q_grid.back() < 5.0)
        throw std::domain_error("q_grid must span [-2, 5]");

    TauCurve out;
    out.q_grid = q_grid;
    for (double q : q_grid) {
        std::vector<double> lx, ly;
        bool degenerate = false;
        for (const auto& p : paths) {
            double sum = 0.0;
            for (std::size_t j = 0; j < p.n; ++j) {
                double inc = std::fabs(p.values[j + 1] - p.values[j]);
                if (inc == 0.0) continue;
                sum += std::pow(inc, q);
            }
            if (!(sum > 0.0) || !std::isfinite(sum)) { degenerate = true; break; }
            lx.push_back(std::log(static_cast<double>(p.n)));
            ly.push_back(std::log(sum));
        }
        if (degenerate || lx.size() < 2) {
            out.tau.push_back(0.0);
            out.reliable.push_back(false);
        } else {
            out.tau.push_back(-detail::least_squares(lx, ly).slope);
            out.reliable.push_back(true);
        }
    }
    return out;
}

// Legendre transform f_l(beta) = inf_q (q beta - tau(q)); concave by
// construction. Unreliable tau points are skipped.
inline SpectrumCurve legendre_empirical(const TauCurve& tau,
                                        const std::vector<double>& beta_grid) {
    SpectrumCurve out;
    out.kind = SpectrumKind::legendre;
    out.origin = SpectrumOrigin::empirical;
    out.grid = beta_grid;
    out.meta = "Legendre transform of partition exponents";
    for (double beta : beta_grid) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < tau.q_grid.size(); ++i) {
            if (!tau.reliable[i]) continue;
            best = std::min(best, tau.q_grid[i] * beta - tau.tau[i]);
        }
        if (!std::isfinite(best))
            throw std::domain_error("legendre_empirical: no reliable tau points");
        out.values.push_back(best);
        out.reliable.push_back(true);
    }
    out.check_invariants();
    return out;
}

// Pointwise regularity from the decay of the local oscillation
// sup - inf over [t-r, t+r] across dyadic r, clipped to [0, 1.5].
struct HolderEstimate {
    double value = 0.0;
    bool reliable = false;
};

inline HolderEstimate holder_estimate(const SamplePath& path, double t,
                                      double r_min, double r_max) {
    if (!(t > 0.0 && t < 1.0)) throw std::domain_error("t must be interior");
    if (!(r_min > 0.0 && r_min < r_max && r_max < std::min(t, 1.0 - t)))
        throw std::domain_error("invalid scale range");
    if (!(r_min * static_cast<double>(path.n) >= 1.0))
        throw std::domain_error("r_min below grid resolution");

    std::vector<double> lr, losc;
    for (double r = r_max; r >= r_min * (1.0 - 1e-12); r *= 0.5) {
        auto lo_idx = static_cast<std::size_t>(std::floor((t - r) * path.n));
        auto hi_idx = static_cast<std::size_t>(std::ceil((t + r) * path.n));
        hi_idx = std::min(hi_idx, path.n);
        double lo = path.values[lo_idx], hi = path.values[lo_idx];
        for (std::size_t j = lo_idx + 1; j <= hi_idx; ++j) {
            lo = std::min(lo, path.values[j]);
            hi = std::max(hi, path.values[j]);
        }
        double osc = hi - lo;
        if (osc > 0.0) {
            lr.push_back(std::log(r));
            losc.push_back(std::log(osc));
        }
    }
    HolderEstimate est;
    if (lr.size() < 2) return est;  // flat everywhere: flagged, not an error

    // A single-octave oscillation drop of more than 4x means one macroscopic
    // jump left the window; scales above the drop measure that jump, not the
    // regularity at t. Fit below the last such break, provided enough scales
    // remain.
    std::size_t start = 0;
    for (std::size_t i = 0; i + 8 < losc.size(); ++i)
        if (losc[i] - losc[i + 1] > std::log(4.0)) start = i + 1;
    std::vector<double> xr(lr.begin() + start, lr.end());
    std::vector<double> yo(losc.begin() + start, losc.end());
    est.value = std::clamp(detail::least_squares(xr, yo).slope, 0.0, 1.5);
    est.reliable = true;
    return est;
}

// Approximation-rate estimate: over the tail window of the point system, the
// worst ratio log|t - V_i| / log lambda_i among points with |t - V_i| below
// lambda_i = 1/(1 + Gamma_i); its reciprocal estimates the rate delta(t).
struct DeltaEstimate {
    double t = 0.0;
    double delta_hat = 1.0;
    std::size_t window_lo = 0, window_hi = 0;  // 1-based inclusive index range
    std::size_t argmax_index = 0;              // 0 when no point qualified
    double argmax_lambda = 0.0;
};

inline DeltaEstimate delta_estimate(const PointSystem& points, double t) {
    if (points.N < 100) throw std::domain_error("delta_estimate needs N >= 100");
    DeltaEstimate de;
    de.t = t;
    de.window_lo = points.N / 4;
    de.window_hi = points.N;
    if (de.window_lo == 0) de.window_lo = 1;
    double rho = 1.0;
    for (std::size_t i = de.window_lo; i <= de.window_hi; ++i) {
        double gamma = points.gamma[i - 1];
        double lambda = 1.0 / (1.0 + gamma);
        double dist = std::fabs(t - points.v[i - 1]);
        if (dist == 0.0)
            throw std::domain_error("t coincides with a jump location; resample t");
        if (dist <= lambda) {
            double ratio = std::log(dist) / std::log(lambda);
            if (ratio > rho) {
                rho = ratio;
                de.argmax_index = i;
                de.argmax_lambda = lambda;
            }
        }
    }
    de.delta_hat = 1.0 / rho;
    return de;
}

inline double predicted_holder(const AlphaFunction& alpha, const DeltaEstimate& de) {
    return de.delta_hat / alpha.evaluate(de.t);
}

}  // namespace mlm

#endif  // MLM_SPECTRA_ESTIMATION_HPP
