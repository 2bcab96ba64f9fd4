#ifndef MLM_MC_VALIDATION_HPP
#define MLM_MC_VALIDATION_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mlm/alpha.hpp"
#include "mlm/quadrature.hpp"
#include "mlm/rng.hpp"
#include "mlm/shotnoise.hpp"
#include "mlm/stable_norm.hpp"

namespace mlm {

struct MCConfig {
    std::size_t replicas = 10000;
    std::uint64_t seed_base = 1;
    std::size_t truncation = 100000;
    double abs_tol = 0.005;      // allowance for series truncation
    double clt_multiplier = 3.0; // times M^{-1/2} sampling noise
    unsigned threads = 1;

    void validate() const {
        if (replicas < 100) throw std::domain_error("MCConfig requires M >= 100");
        if (truncation == 0) throw std::domain_error("MCConfig requires N >= 1");
    }
    double tolerance() const {
        return abs_tol + clt_multiplier / std::sqrt(static_cast<double>(replicas));
    }
    std::uint64_t replica_seed(std::size_t r) const {
        return mix64(seed_base ^ mix64(static_cast<std::uint64_t>(r) + 1));
    }
};

namespace detail {

// Sum of sign_i * Gamma_i^{-q} over i = 1..N for one replica, constant q.
// The power is carried along the arrival walk multiplicatively:
// t_{i+1} = t_i (1 + e_i/Gamma_i)^{-q}. An exact pow is used for the head
// and periodically to rebase; in between a cubic expansion of (1+x)^{-q}
// suffices since x ~ 1/i.
inline double signed_power_sum(SequentialRng& rng, std::size_t N, double q) {
    const std::size_t head = 2048, rebase = 4096;
    const double c1 = -q;
    const double c2 = 0.5 * q * (q + 1.0);
    const double c3 = -q * (q + 1.0) * (q + 2.0) / 6.0;
    double gamma = 0.0, term = 0.0, sum = 0.0;
    std::uint64_t sign_pool = 0;
    unsigned pool_left = 0;
    for (std::size_t i = 0; i < N; ++i) {
        double e = ziggurat_exponential(rng);
        if (i < head || (i % rebase) == 0) {
            gamma += e;
            term = std::pow(gamma, -q);
        } else {
            double x = e / gamma;
            gamma += e;
            if (x > 0.05) {
                term = std::pow(gamma, -q);
            } else {
                term *= 1.0 + x * (c1 + x * (c2 + x * c3));
            }
        }
        if (pool_left == 0) {
            sign_pool = rng.bits();
            pool_left = 64;
        }
        sum += (sign_pool & 1u) ? term : -term;
        sign_pool >>= 1;
        --pool_left;
    }
    return sum;
}

// Jumps landing in (a, b] only, by geometric index-skipping: each index is
// retained with probability w = b - a, and the arrival value at a retained
// index advances by a Gamma(skipped + 1) increment. Exact in distribution,
// cost O(w N) per replica. The coefficient of each retained jump comes from
// `coeff(v, gamma)` with v uniform in (a, b].
template <typename Coeff>
inline double thinned_interval_sum(SequentialRng& rng, std::size_t N, double a,
                                   double b, Coeff&& coeff) {
    const double w = b - a;
    if (!(w > 0.0 && w <= 1.0)) throw std::domain_error("interval width must be in (0,1]");
    const double log_keep = std::log1p(-w);
    double gamma = 0.0, sum = 0.0;
    std::size_t i = 0;  // count of indices consumed
    while (true) {
        std::size_t gap;
        if (w >= 1.0) {
            gap = 0;
        } else {
            double u = rng.uniform();
            double g = std::floor(std::log(u) / log_keep);
            if (g >= static_cast<double>(N - i)) break;
            gap = static_cast<std::size_t>(g);
        }
        if (i + gap + 1 > N) break;
        gamma += sample_gamma(rng, static_cast<double>(gap + 1));
        i += gap + 1;
        double v = a + w * rng.uniform();
        double c = coeff(v, gamma);
        sum += (rng.bits() & 1u) ? c : -c;
        if (i == N) break;
    }
    return sum;
}

}  // namespace detail

struct CharFnResult {
    std::complex<double> empirical;
    std::complex<double> theoretical;
    double distance;
};

inline std::complex<double> char_fn_theoretical(const AlphaFunction& alpha, double s,
                                                double t, double theta) {
    if (theta == 0.0) return {1.0, 0.0};
    double expo = integrate(
        [&](double x) { return std::pow(std::fabs(theta), alpha.evaluate(x)); }, s, t,
        1e-10, 1e-12);
    return {std::exp(-expo), 0.0};
}

// E exp(i theta (B(t) - B(s))) for several theta values sharing one set of
// replicas. Constant alpha takes a fast sum (full walk when (s,t) = (0,1),
// interval thinning otherwise); a varying alpha falls back to full point
// systems per replica.
inline std::vector<CharFnResult> empirical_char_fn_sweep(const AlphaFunction& alpha,
                                                         double s, double t,
                                                         const std::vector<double>& thetas,
                                                         const MCConfig& cfg) {
    if (!(0.0 <= s && s < t && t <= 1.0))
        throw std::domain_error("char fn requires 0 <= s < t <= 1");
    cfg.validate();
    const std::size_t M = cfg.replicas, N = cfg.truncation;
    const bool constant = alpha.kind() == AlphaFunction::Kind::constant;
    const double a0 = alpha.evaluate(0.0);
    const double q0 = 1.0 / a0;
    const double root0 = stable_norm_root(a0);

    // Deterministic reduction independent of any threading: fixed chunks,
    // summed in order.
    const std::size_t chunk = 1024;
    const std::size_t n_chunks = (M + chunk - 1) / chunk;
    std::vector<std::vector<std::complex<double>>> partial(
        n_chunks, std::vector<std::complex<double>>(thetas.size(), {0.0, 0.0}));

    for (std::size_t c = 0; c < n_chunks; ++c) {
        std::size_t r_lo = c * chunk, r_hi = std::min(M, r_lo + chunk);
        for (std::size_t r = r_lo; r < r_hi; ++r) {
            SequentialRng rng(cfg.replica_seed(r), 0);
            double inc;
            if (constant && s == 0.0 && t == 1.0) {
                inc = root0 * detail::signed_power_sum(rng, N, q0);
            } else if (constant) {
                inc = root0 * detail::thinned_interval_sum(
                                  rng, N, s, t,
                                  [&](double, double g) { return std::pow(g, -q0); });
            } else {
                inc = detail::thinned_interval_sum(rng, N, s, t, [&](double v, double g) {
                    double a = alpha.evaluate(v);
                    return stable_norm_root(a) * std::pow(g, -1.0 / a);
                });
            }
            for (std::size_t k = 0; k < thetas.size(); ++k) {
                double phase = thetas[k] * inc;
                partial[c][k] += std::complex<double>(std::cos(phase), std::sin(phase));
            }
        }
    }

    std::vector<CharFnResult> out(thetas.size());
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t c = 0; c < n_chunks; ++c) acc += partial[c][k];
        out[k].empirical = acc / static_cast<double>(M);
        out[k].theoretical = char_fn_theoretical(alpha, s, t, thetas[k]);
        out[k].distance = std::abs(out[k].empirical - out[k].theoretical);
    }
    return out;
}

inline CharFnResult empirical_char_fn(const AlphaFunction& alpha, double s, double t,
                                      double theta, const MCConfig& cfg) {
    return empirical_char_fn_sweep(alpha, s, t, {theta}, cfg)[0];
}

enum class IncrementProcess { Y, B };

namespace detail {

// One replica's process increment over ((j)/n, (j+1)/n].
inline double replica_increment(SequentialRng& rng, const AlphaFunction& alpha,
                                IncrementProcess proc, std::size_t n, std::size_t j,
                                std::size_t N) {
    const double a = static_cast<double>(j) / n, b = static_cast<double>(j + 1) / n;
    const bool constant = alpha.kind() == AlphaFunction::Kind::constant;
    if (proc == IncrementProcess::B) {
        if (constant) {
            double q = 1.0 / alpha.evaluate(0.0);
            double root = stable_norm_root(alpha.evaluate(0.0));
            return thinned_interval_sum(rng, N, a, b, [&](double, double g) {
                return root * std::pow(g, -q);
            });
        }
        return thinned_interval_sum(rng, N, a, b, [&](double v, double g) {
            double av = alpha.evaluate(v);
            return stable_norm_root(av) * std::pow(g, -1.0 / av);
        });
    }
    if (constant) {
        double q = 1.0 / alpha.evaluate(0.0);
        return thinned_interval_sum(rng, N, a, b,
                                    [&](double, double g) { return std::pow(g, -q); });
    }
    // Varying alpha entangles every term with the evaluation time; build the
    // replica's full point system.
    PointSystem ps = generate_points(rng.seed(), N);
    double qa = 1.0 / alpha.evaluate(a), qb = 1.0 / alpha.evaluate(b);
    double ya = 0.0, yb = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        if (ps.v[i] <= b) {
            double sgn = ps.sign[i] ? 1.0 : -1.0;
            yb += sgn * std::pow(ps.gamma[i], -qb);
            if (ps.v[i] <= a) ya += sgn * std::pow(ps.gamma[i], -qa);
        }
    }
    return yb - ya;
}

}  // namespace detail

inline double increment_prob(const AlphaFunction& alpha, double beta, double eps,
                             std::size_t n, std::size_t j, const MCConfig& cfg,
                             IncrementProcess proc = IncrementProcess::Y) {
    if (!(eps > 0.0)) throw std::domain_error("eps must be positive");
    if (j >= n) throw std::domain_error("cell index out of range");
    cfg.validate();
    const double lo = std::pow(static_cast<double>(n), -(beta + eps));
    const double hi = std::pow(static_cast<double>(n), -(beta - eps));
    std::size_t hits = 0;
    for (std::size_t r = 0; r < cfg.replicas; ++r) {
        // Seed depends on (r, n, j) only so nested bands reuse identical draws.
        std::uint64_t seed = mix64(cfg.replica_seed(r) ^
                                   mix64((static_cast<std::uint64_t>(n) << 32) ^ j));
        SequentialRng rng(seed, 0);
        double inc = std::fabs(
            detail::replica_increment(rng, alpha, proc, n, j, cfg.truncation));
        if (inc >= lo && inc <= hi) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(cfg.replicas);
}

struct ScalingFit {
    std::vector<std::size_t> n_list;
    std::vector<double> probabilities;
    double slope = 0.0;
    double predicted_lo = 0.0, predicted_hi = 0.0;
    bool contained = false;
    bool reliable = false;
};

// Slope of log P vs log n for the band probability at a fixed location t_j,
// against the exponent interval the two scaling regimes predict.
inline ScalingFit scaling_fit(const AlphaFunction& alpha, double beta, double eps,
                              double t_j, const std::vector<std::size_t>& n_list,
                              const MCConfig& cfg, double slack = 0.1,
                              IncrementProcess proc = IncrementProcess::Y) {
    auto [c, d] = alpha.bounds();
    const bool low = beta < 1.0 / d, high = beta > 1.0 / c;
    if (!low && !high)
        throw std::domain_error("beta must avoid the middle band [1/d, 1/c]");
    if (n_list.size() < 4) throw std::domain_error("need at least 4 resolutions");
    if (!(t_j > 0.0 && t_j < 1.0)) throw std::domain_error("t_j must be interior");
    cfg.validate();

    ScalingFit fit;
    fit.n_list = n_list;
    const double at = alpha.evaluate(t_j);
    if (low) {
        fit.predicted_lo = at * (beta - eps) - 1.0;
        fit.predicted_hi = at * (beta + eps) - 1.0;
    } else {
        fit.predicted_lo = 1.0 / at - beta - eps;
        fit.predicted_hi = 1.0 / at - beta + eps;
    }

    // The band is a difference of two tail levels whose ratio decays only
    // like n^{-gap}; dividing that factor out before fitting removes a
    // finite-size bias that would otherwise tilt the slope by ~1/log n.
    const double gap = low ? 2.0 * eps * at : 2.0 * eps;
    std::vector<double> lx, ly;
    for (std::size_t n : n_list) {
        auto j = static_cast<std::size_t>(t_j * static_cast<double>(n));
        double p = increment_prob(alpha, beta, eps, n, j, cfg, proc);
        fit.probabilities.push_back(p);
        if (p > 0.0) {
            lx.push_back(std::log(static_cast<double>(n)));
            ly.push_back(std::log(p) -
                         std::log1p(-std::pow(static_cast<double>(n), -gap)));
        }
    }
    if (lx.size() < 3) return fit;  // unreliable, slope left at 0

    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) { mx += lx[i]; my += ly[i]; }
    mx /= lx.size(); my /= ly.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.reliable = true;
    fit.contained = fit.slope >= fit.predicted_lo - slack &&
                    fit.slope <= fit.predicted_hi + slack;
    return fit;
}

// Localisability: rescaled increments (B(u+r) - B(u)) / r^{1/alpha(u)} should
// approach the stable law at u, so the empirical characteristic value at
// theta should approach exp(-|theta|^alpha(u)) as r shrinks.
inline std::vector<double> tangent_check(const AlphaFunction& alpha, double u,
                                         const std::vector<double>& r_list,
                                         double theta, const MCConfig& cfg) {
    if (!(u > 0.0 && u < 1.0)) throw std::domain_error("u must be interior");
    for (std::size_t i = 0; i < r_list.size(); ++i) {
        if (!(r_list[i] > 0.0 && r_list[i] < std::min(u, 1.0 - u)))
            throw std::domain_error("scales must fit inside (0, min(u, 1-u))");
        if (i > 0 && !(r_list[i] < r_list[i - 1]))
            throw std::domain_error("r_list must be decreasing");
    }
    cfg.validate();
    const double au = alpha.evaluate(u);
    const std::complex<double> target(std::exp(-std::pow(std::fabs(theta), au)), 0.0);
    std::vector<double> distances;
    for (std::size_t ri = 0; ri < r_list.size(); ++ri) {
        double r = r_list[ri];
        double scale = std::pow(r, -1.0 / au);
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t rep = 0; rep < cfg.replicas; ++rep) {
            std::uint64_t seed = mix64(cfg.replica_seed(rep) ^ mix64(ri + 1));
            SequentialRng rng(seed, 0);
            double inc = detail::thinned_interval_sum(
                rng, cfg.truncation, u, u + r, [&](double v, double g) {
                    double av = alpha.evaluate(v);
                    return stable_norm_root(av) * std::pow(g, -1.0 / av);
                });
            double phase = theta * scale * inc;
            acc += std::complex<double>(std::cos(phase), std::sin(phase));
        }
        acc /= static_cast<double>(cfg.replicas);
        distances.push_back(theta == 0.0 ? 0.0 : std::abs(acc - target));
    }
    return distances;
}

}  // namespace mlm

#endif  // MLM_MC_VALIDATION_HPP
