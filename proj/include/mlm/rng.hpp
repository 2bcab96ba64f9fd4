#ifndef MLM_RNG_HPP
#define MLM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace mlm {

// SplitMix64 finalizer. Used both as a mixing function and, applied to a
// counter, as the generator itself.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based generator: value(i) depends only on (seed, stream, i), so
// extending a sequence keeps its prefix and sub-streams never collide.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : base_(mix64(seed ^ mix64(0x5851f42d4c957f2dULL * (stream + 1)))) {}

    std::uint64_t bits_at(std::uint64_t index) const {
        return mix64(base_ + index * 0x9e3779b97f4a7c15ULL);
    }

    // Uniform in the open interval (0,1).
    double uniform_at(std::uint64_t index) const {
        return (static_cast<double>(bits_at(index) >> 11) + 0.5) * 0x1.0p-53;
    }

    // Unit-rate exponential via inverse CDF, -log(1-U).
    double exponential_at(std::uint64_t index) const {
        return -std::log1p(-uniform_at(index));
    }

private:
    std::uint64_t base_;
};

// Sequential adapter over CounterRng; satisfies UniformRandomBitGenerator.
class SequentialRng {
public:
    using result_type = std::uint64_t;
    SequentialRng(std::uint64_t seed, std::uint64_t stream)
        : rng_(seed, stream), seed_(seed), index_(0) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() {
        return std::numeric_limits<std::uint64_t>::max();
    }
    result_type operator()() { return rng_.bits_at(index_++); }
    result_type bits() { return (*this)(); }
    std::uint64_t seed() const { return seed_; }

    double uniform() {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }
    double exponential() { return -std::log1p(-uniform()); }

private:
    CounterRng rng_;
    std::uint64_t seed_;
    std::uint64_t index_;
};

namespace detail {

// Tables for the Marsaglia-Tsang ziggurat, exponential variant (256 layers).
struct ZigguratExpTables {
    // x[0] is the ghost abscissa v/f(r); x[1] = r; x[256] = 0.
    double x[257];
    double y[257];
    ZigguratExpTables() {
        const double r = 7.69711747013104972;
        const double v = 3.9496598225815571993e-3;
        x[0] = v / std::exp(-r);
        x[1] = r;
        for (int i = 2; i < 256; ++i)
            x[i] = -std::log(v / x[i - 1] + std::exp(-x[i - 1]));
        x[256] = 0.0;
        for (int i = 0; i < 257; ++i) y[i] = std::exp(-x[i]);
    }
};

inline const ZigguratExpTables& ziggurat_exp_tables() {
    static const ZigguratExpTables t;
    return t;
}

}  // namespace detail

// Fast unit-rate exponential. Exact (rejection-based), roughly 3x cheaper
// than the inverse-CDF route in the hot Monte-Carlo loops.
template <class Rng>
double ziggurat_exponential(Rng& rng) {
    const auto& t = detail::ziggurat_exp_tables();
    for (;;) {
        std::uint64_t bits = rng();
        int i = static_cast<int>(bits & 0xff);
        double u = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
        double cand = u * t.x[i];
        if (cand < t.x[i + 1]) return cand;
        if (i == 0) {
            // Tail beyond r: memoryless restart.
            double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
            return t.x[1] - std::log1p(-u1);
        }
        double u2 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        if (t.y[i] + u2 * (t.y[i + 1] - t.y[i]) < std::exp(-cand)) return cand;
    }
}

// Gamma(shape,1) sampler, Marsaglia-Tsang for shape >= 1 plus the standard
// boost for shape < 1. Used to jump over runs of arrival indices at once.
template <class Rng>
double sample_gamma(Rng& rng, double shape) {
    if (shape < 1.0) {
        double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        return sample_gamma(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        // Polar Gaussian from two uniforms.
        double n;
        {
            double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
            double u2 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
            n = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        }
        double v = 1.0 + c * n;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
        if (u < 1.0 - 0.0331 * n * n * n * n) return d * v;
        if (std::log(u) < 0.5 * n * n + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace mlm

#endif  // MLM_RNG_HPP
