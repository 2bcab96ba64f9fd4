#ifndef MLM_SHOTNOISE_HPP
#define MLM_SHOTNOISE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlm/alpha.hpp"
#include "mlm/rng.hpp"
#include "mlm/stable_norm.hpp"

namespace mlm {

// One realization of the driving triple (Gamma_i, V_i, gamma_i) up to
// truncation N. Immutable after generation.
struct PointSystem {
    std::uint64_t seed = 0;
    std::size_t N = 0;
    std::vector<double> gamma;   // Poisson arrival times, strictly increasing
    std::vector<double> v;       // jump locations in (0,1)
    std::vector<double> sign;    // +1 or -1
    std::vector<std::uint32_t> by_v;  // indices sorted by location
};

// Sub-stream ids of the driving generator.
namespace stream {
constexpr std::uint64_t arrivals = 0;
constexpr std::uint64_t locations = 1;
constexpr std::uint64_t signs = 2;
}  // namespace stream

// Deterministic given (seed, N); (seed, 2N) extends (seed, N) entry for
// entry because every draw is indexed, not sequential.
inline PointSystem generate_points(std::uint64_t seed, std::size_t N) {
    if (N == 0) throw std::domain_error("generate_points requires N >= 1");
    PointSystem ps;
    ps.seed = seed;
    ps.N = N;
    ps.gamma.resize(N);
    ps.v.resize(N);
    ps.sign.resize(N);
    CounterRng arrivals(seed, stream::arrivals);
    CounterRng locations(seed, stream::locations);
    CounterRng signs(seed, stream::signs);
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        acc += arrivals.exponential_at(i);
        ps.gamma[i] = acc;
        double loc = locations.uniform_at(i);
        // V_i = 0 would make the indicator at t = 0 ambiguous; resample from
        // a disjoint index range (unreachable with the open-interval mapping,
        // kept as a guard).
        std::uint64_t k = i;
        while (loc == 0.0) loc = locations.uniform_at(k += N);
        ps.v[i] = loc;
        ps.sign[i] = (signs.bits_at(i) & 1u) ? 1.0 : -1.0;
    }
    ps.by_v.resize(N);
    std::iota(ps.by_v.begin(), ps.by_v.end(), 0u);
    std::sort(ps.by_v.begin(), ps.by_v.end(),
              [&](std::uint32_t a, std::uint32_t b) { return ps.v[a] < ps.v[b]; });
    return ps;
}

// Truncated prefix view (first M points of the same realization).
inline PointSystem prefix_points(const PointSystem& ps, std::size_t M) {
    if (M == 0 || M > ps.N) throw std::domain_error("bad prefix length");
    PointSystem out;
    out.seed = ps.seed;
    out.N = M;
    out.gamma.assign(ps.gamma.begin(), ps.gamma.begin() + M);
    out.v.assign(ps.v.begin(), ps.v.begin() + M);
    out.sign.assign(ps.sign.begin(), ps.sign.begin() + M);
    out.by_v.resize(M);
    std::iota(out.by_v.begin(), out.by_v.end(), 0u);
    std::sort(out.by_v.begin(), out.by_v.end(),
              [&](std::uint32_t a, std::uint32_t b) { return out.v[a] < out.v[b]; });
    return out;
}

enum class ProcessKind { Y, B, D, Z, W, A };

inline const char* process_name(ProcessKind k) {
    switch (k) {
        case ProcessKind::Y: return "Y";
        case ProcessKind::B: return "B";
        case ProcessKind::D: return "D";
        case ProcessKind::Z: return "Z";
        case ProcessKind::W: return "W";
        case ProcessKind::A: return "A";
    }
    return "?";
}

// A process evaluated on the closed dyadic grid t_j = j/n, j = 0..n.
struct SamplePath {
    ProcessKind kind = ProcessKind::B;
    std::size_t n = 0;
    std::vector<double> values;  // length n+1
    std::uint64_t seed = 0;
    std::size_t N = 0;
    std::string alpha_desc;
};

// Y(t) = sum gamma_i Gamma_i^{-1/alpha(t)} [V_i <= t], truncated at N.
inline double eval_Y(const PointSystem& ps, const AlphaFunction& alpha, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("t outside [0,1]");
    const double q = 1.0 / alpha.evaluate(t);
    double sum = 0.0;
    for (std::size_t i = 0; i < ps.N; ++i)
        if (ps.v[i] <= t) sum += ps.sign[i] * std::pow(ps.gamma[i], -q);
    return sum;
}

// Size of the B-jump at V_i (1-based index).
inline double jump_size(const PointSystem& ps, const AlphaFunction& alpha,
                        std::size_t i) {
    if (i < 1 || i > ps.N) throw std::out_of_range("jump index out of range");
    double a = alpha.evaluate(ps.v[i - 1]);
    return ps.sign[i - 1] * stable_norm_root(a) *
           std::pow(ps.gamma[i - 1], -1.0 / a);
}

namespace detail {

// Prefix-summed path for jump processes whose i-th term does not depend on
// the evaluation time: B, Z, W. The callback maps point index -> jump value.
template <class JumpFn>
SamplePath bucketed_path(const PointSystem& ps, std::size_t n, ProcessKind kind,
                         const std::string& alpha_desc, JumpFn&& jump) {
    if (n == 0) throw std::domain_error("grid resolution must be >= 1");
    std::vector<double> bucket(n + 1, 0.0);
    for (std::size_t i = 0; i < ps.N; ++i) {
        // Smallest grid index j with V_i <= j/n.
        auto cell = static_cast<std::size_t>(
            std::ceil(ps.v[i] * static_cast<double>(n)));
        if (cell > n) continue;  // V_i > 1 cannot happen; guard anyway
        bucket[cell] += jump(i);
    }
    SamplePath path;
    path.kind = kind;
    path.n = n;
    path.seed = ps.seed;
    path.N = ps.N;
    path.alpha_desc = alpha_desc;
    path.values.resize(n + 1);
    double acc = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        acc += bucket[j];
        path.values[j] = acc;
    }
    return path;
}

}  // namespace detail

// B(t) = sum gamma_i C_{alpha(V_i)}^{1/alpha(V_i)} Gamma_i^{-1/alpha(V_i)} [V_i <= t].
inline SamplePath sample_path_B(const PointSystem& ps, const AlphaFunction& alpha,
                                std::size_t n) {
    return detail::bucketed_path(
        ps, n, ProcessKind::B, alpha.describe(), [&](std::size_t i) {
            double a = alpha.evaluate(ps.v[i]);
            return ps.sign[i] * stable_norm_root(a) * std::pow(ps.gamma[i], -1.0 / a);
        });
}

// Z: arrival times replaced by their index.
inline SamplePath sample_path_Z(const PointSystem& ps, const AlphaFunction& alpha,
                                std::size_t n) {
    return detail::bucketed_path(
        ps, n, ProcessKind::Z, alpha.describe(), [&](std::size_t i) {
            double a = alpha.evaluate(ps.v[i]);
            return ps.sign[i] * stable_norm_root(a) *
                   std::pow(static_cast<double>(i + 1), -1.0 / a);
        });
}

// W = B - Z term by term.
inline SamplePath sample_path_W(const PointSystem& ps, const AlphaFunction& alpha,
                                std::size_t n) {
    return detail::bucketed_path(
        ps, n, ProcessKind::W, alpha.describe(), [&](std::size_t i) {
            double a = alpha.evaluate(ps.v[i]);
            return ps.sign[i] * stable_norm_root(a) *
                   (std::pow(ps.gamma[i], -1.0 / a) -
                    std::pow(static_cast<double>(i + 1), -1.0 / a));
        });
}

// D(t) = C_{alpha(t)}^{1/alpha(t)} sum gamma_i Gamma_i^{-1/alpha(t)} [V_i <= t].
// The exponent is entangled with t, so each grid point resums the jumps with
// locations below it (sorted order, amortized via a running prefix index).
inline SamplePath sample_path_D(const PointSystem& ps, const AlphaFunction& alpha,
                                std::size_t n) {
    if (n == 0) throw std::domain_error("grid resolution must be >= 1");
    if (alpha.kind() == AlphaFunction::Kind::constant) {
        // Exponent no longer depends on t; one prefix-sum pass suffices.
        double a = alpha.evaluate(0.0);
        double root = stable_norm_root(a);
        SamplePath path = detail::bucketed_path(
            ps, n, ProcessKind::D, alpha.describe(), [&](std::size_t i) {
                return ps.sign[i] * root * std::pow(ps.gamma[i], -1.0 / a);
            });
        return path;
    }
    SamplePath path;
    path.kind = ProcessKind::D;
    path.n = n;
    path.seed = ps.seed;
    path.N = ps.N;
    path.alpha_desc = alpha.describe();
    path.values.assign(n + 1, 0.0);
    std::vector<double> log_gamma(ps.N);
    for (std::size_t i = 0; i < ps.N; ++i) log_gamma[i] = std::log(ps.gamma[i]);
    std::size_t upto = 0;
    for (std::size_t j = 0; j <= n; ++j) {
        double t = static_cast<double>(j) / static_cast<double>(n);
        while (upto < ps.N && ps.v[ps.by_v[upto]] <= t) ++upto;
        if (upto == 0) continue;
        double a = alpha.evaluate(t);
        double q = 1.0 / a;
        double sum = 0.0;
        for (std::size_t k = 0; k < upto; ++k) {
            std::uint32_t i = ps.by_v[k];
            sum += ps.sign[i] * std::exp(-q * log_gamma[i]);
        }
        path.values[j] = stable_norm_root(a) * sum;
    }
    return path;
}

// Same grid conventions; Y differs from D only by the missing prefactor.
inline SamplePath sample_path_Y(const PointSystem& ps, const AlphaFunction& alpha,
                                std::size_t n) {
    if (alpha.kind() == AlphaFunction::Kind::constant) {
        double a = alpha.evaluate(0.0);
        return detail::bucketed_path(
            ps, n, ProcessKind::Y, alpha.describe(), [&](std::size_t i) {
                return ps.sign[i] * std::pow(ps.gamma[i], -1.0 / a);
            });
    }
    SamplePath path = sample_path_D(ps, alpha, n);
    path.kind = ProcessKind::Y;
    for (std::size_t j = 0; j <= n; ++j) {
        double t = static_cast<double>(j) / static_cast<double>(n);
        path.values[j] /= stable_norm_root(alpha.evaluate(t));
    }
    return path;
}

// A = D - B, the absolutely continuous part of D.
inline SamplePath smooth_part_A(const SamplePath& pathB, const SamplePath& pathD) {
    if (pathB.kind != ProcessKind::B || pathD.kind != ProcessKind::D)
        throw std::domain_error("smooth_part_A expects a B path and a D path");
    if (pathB.n != pathD.n || pathB.seed != pathD.seed || pathB.N != pathD.N ||
        pathB.alpha_desc != pathD.alpha_desc)
        throw std::domain_error("smooth_part_A requires matching grid and provenance");
    SamplePath out = pathD;
    out.kind = ProcessKind::A;
    for (std::size_t j = 0; j < out.values.size(); ++j)
        out.values[j] -= pathB.values[j];
    return out;
}

inline SamplePath sample_path(const PointSystem& ps, const AlphaFunction& alpha,
                              std::size_t n, ProcessKind kind) {
    switch (kind) {
        case ProcessKind::Y: return sample_path_Y(ps, alpha, n);
        case ProcessKind::B: return sample_path_B(ps, alpha, n);
        case ProcessKind::D: return sample_path_D(ps, alpha, n);
        case ProcessKind::Z: return sample_path_Z(ps, alpha, n);
        case ProcessKind::W: return sample_path_W(ps, alpha, n);
        case ProcessKind::A:
            return smooth_part_A(sample_path_B(ps, alpha, n),
                                 sample_path_D(ps, alpha, n));
    }
    throw std::domain_error("unknown process kind");
}

// Sup-norm difference between the truncations N1 and N2 of the same series.
inline double truncation_error_report(std::uint64_t seed, const AlphaFunction& alpha,
                                      std::size_t n, std::size_t N1, std::size_t N2,
                                      ProcessKind kind = ProcessKind::B) {
    if (N1 > N2) throw std::domain_error("truncation_error_report needs N1 <= N2");
    PointSystem full = generate_points(seed, N2);
    SamplePath coarse = sample_path(prefix_points(full, N1), alpha, n, kind);
    SamplePath fine = sample_path(full, alpha, n, kind);
    double sup = 0.0;
    for (std::size_t j = 0; j <= n; ++j)
        sup = std::max(sup, std::abs(fine.values[j] - coarse.values[j]));
    return sup;
}

}  // namespace mlm

#endif  // MLM_SHOTNOISE_HPP
