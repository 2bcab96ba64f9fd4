#ifndef MLM_ALPHA_HPP
#define MLM_ALPHA_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mlm {

// Stability-index function alpha: [0,1] -> (1,2). C1 by construction for
// every kind: the table kind uses a monotone cubic (Fritsch-Carlson)
// interpolant, which stays inside the data range.
class AlphaFunction {
public:
    enum class Kind { constant, affine, sinusoidal, table };

    static AlphaFunction constant(double value) {
        AlphaFunction a(Kind::constant, {value});
        a.finalize(1.0);
        return a;
    }

    // alpha(t) = intercept + slope * t
    static AlphaFunction affine(double intercept, double slope) {
        AlphaFunction a(Kind::affine, {intercept, slope});
        a.finalize(slope == 0.0 ? 1.0 : 0.0);
        return a;
    }

    // alpha(t) = mean + amplitude * sin(2*pi*frequency*t + phase)
    static AlphaFunction sinusoidal(double mean, double amplitude,
                                    double frequency = 1.0, double phase = 0.0) {
        AlphaFunction a(Kind::sinusoidal, {mean, amplitude, frequency, phase});
        a.finalize(amplitude == 0.0 ? 1.0 : 0.0);
        return a;
    }

    // Values at equally spaced knots over [0,1], at least 2 of them.
    static AlphaFunction table(std::vector<double> knots) {
        if (knots.size() < 2)
            throw std::domain_error("alpha table needs at least 2 knots");
        AlphaFunction a(Kind::table, std::move(knots));
        a.build_table_slopes();
        a.finalize(0.0);
        return a;
    }

    Kind kind() const { return kind_; }
    double c() const { return c_; }
    double d() const { return d_; }
    std::pair<double, double> bounds() const { return {c_, d_}; }
    double lipschitz_bound() const { return lipschitz_; }
    double min_set_dimension() const { return min_set_dimension_; }
    void set_min_set_dimension(double v) {
        if (v < 0.0 || v > 1.0)
            throw std::domain_error("min_set_dimension must lie in [0,1]");
        min_set_dimension_ = v;
    }
    bool is_constant() const { return c_ == d_; }

    double evaluate(double t) const {
        check_domain(t);
        return raw_eval(t);
    }

    double derivative(double t) const {
        check_domain(t);
        switch (kind_) {
            case Kind::constant:
                return 0.0;
            case Kind::affine:
                return params_[1];
            case Kind::sinusoidal:
                return params_[1] * 2.0 * pi() * params_[2] *
                       std::cos(2.0 * pi() * params_[2] * t + params_[3]);
            case Kind::table:
                return table_derivative(t);
        }
        return 0.0;
    }

    std::string describe() const {
        char buf[160];
        switch (kind_) {
            case Kind::constant:
                std::snprintf(buf, sizeof(buf), "constant(%.12g)", params_[0]);
                break;
            case Kind::affine:
                std::snprintf(buf, sizeof(buf), "affine(%.12g,%.12g)", params_[0],
                              params_[1]);
                break;
            case Kind::sinusoidal:
                std::snprintf(buf, sizeof(buf), "sinusoidal(%.12g,%.12g,%.12g,%.12g)",
                              params_[0], params_[1], params_[2], params_[3]);
                break;
            case Kind::table:
                std::snprintf(buf, sizeof(buf), "table(%zu knots)", params_.size());
                break;
        }
        return buf;
    }

private:
    AlphaFunction(Kind kind, std::vector<double> params)
        : kind_(kind), params_(std::move(params)) {}

    static constexpr double pi() { return 3.14159265358979323846; }

    static void check_domain(double t) {
        if (!(t >= 0.0 && t <= 1.0))
            throw std::domain_error("alpha argument outside [0,1]");
    }

    double raw_eval(double t) const {
        switch (kind_) {
            case Kind::constant:
                return params_[0];
            case Kind::affine:
                return params_[0] + params_[1] * t;
            case Kind::sinusoidal:
                return params_[0] +
                       params_[1] * std::sin(2.0 * pi() * params_[2] * t + params_[3]);
            case Kind::table:
                return table_eval(t);
        }
        return 0.0;
    }

    // Fritsch-Carlson slopes: the cubic Hermite interpolant never leaves the
    // local data range, so the interpolant range equals the knot range.
    void build_table_slopes() {
        const std::size_t n = params_.size();
        const double h = 1.0 / static_cast<double>(n - 1);
        std::vector<double> delta(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i)
            delta[i] = (params_[i + 1] - params_[i]) / h;
        slopes_.assign(n, 0.0);
        slopes_[0] = delta[0];
        slopes_[n - 1] = delta[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (delta[i - 1] * delta[i] <= 0.0)
                slopes_[i] = 0.0;
            else
                slopes_[i] = 2.0 * delta[i - 1] * delta[i] / (delta[i - 1] + delta[i]);
        }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (delta[i] == 0.0) {
                slopes_[i] = slopes_[i + 1] = 0.0;
                continue;
            }
            double a = slopes_[i] / delta[i];
            double b = slopes_[i + 1] / delta[i];
            double s = a * a + b * b;
            if (s > 9.0) {
                double tau = 3.0 / std::sqrt(s);
                slopes_[i] = tau * a * delta[i];
                slopes_[i + 1] = tau * b * delta[i];
            }
        }
    }

    std::size_t table_cell(double t, double& u, double& h) const {
        const std::size_t n = params_.size();
        h = 1.0 / static_cast<double>(n - 1);
        std::size_t i = std::min<std::size_t>(
            static_cast<std::size_t>(t * static_cast<double>(n - 1)), n - 2);
        u = (t - static_cast<double>(i) * h) / h;
        return i;
    }

    double table_eval(double t) const {
        double u, h;
        std::size_t i = table_cell(t, u, h);
        double h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
        double h10 = u * (1.0 - u) * (1.0 - u);
        double h01 = u * u * (3.0 - 2.0 * u);
        double h11 = u * u * (u - 1.0);
        return h00 * params_[i] + h10 * h * slopes_[i] + h01 * params_[i + 1] +
               h11 * h * slopes_[i + 1];
    }

    double table_derivative(double t) const {
        double u, h;
        std::size_t i = table_cell(t, u, h);
        double d00 = 6.0 * u * (u - 1.0);
        double d10 = (1.0 - u) * (1.0 - 3.0 * u);
        double d01 = -d00;
        double d11 = u * (3.0 * u - 2.0);
        return (d00 * params_[i] + d01 * params_[i + 1]) / h + d10 * slopes_[i] +
               d11 * slopes_[i + 1];
    }

    // Computes (c,d), the Lipschitz bound, validates the range, and sets the
    // default min-set dimension.
    void finalize(double default_min_set_dim) {
        switch (kind_) {
            case Kind::constant:
                c_ = d_ = params_[0];
                lipschitz_ = 0.0;
                break;
            case Kind::affine:
                c_ = std::min(params_[0], params_[0] + params_[1]);
                d_ = std::max(params_[0], params_[0] + params_[1]);
                lipschitz_ = std::abs(params_[1]);
                break;
            case Kind::sinusoidal: {
                lipschitz_ = std::abs(params_[1]) * 2.0 * pi() * std::abs(params_[2]);
                if (std::abs(params_[2]) >= 1.0) {
                    // Full period inside [0,1]: extrema are attained.
                    c_ = params_[0] - std::abs(params_[1]);
                    d_ = params_[0] + std::abs(params_[1]);
                } else {
                    grid_bounds();
                }
                break;
            }
            case Kind::table:
                grid_bounds();
                lipschitz_ = 0.0;
                for (int k = 0; k <= 100000; ++k)
                    lipschitz_ = std::max(
                        lipschitz_, std::abs(table_derivative(k / 100000.0)));
                break;
        }
        if (!(c_ > 1.0 + 1e-6 && d_ < 2.0 - 1e-6) || !(c_ <= d_))
            throw std::domain_error(
                "alpha range must stay inside (1,2) with 1e-6 margin");
        min_set_dimension_ = default_min_set_dim;
    }

    // Grid search at step 1e-4, then golden-section refinement to 1e-10.
    void grid_bounds() {
        const int n = 10000;
        double tmin = 0.0, tmax = 0.0, vmin = raw_eval(0.0), vmax = vmin;
        for (int k = 1; k <= n; ++k) {
            double t = static_cast<double>(k) / n;
            double v = raw_eval(t);
            if (v < vmin) { vmin = v; tmin = t; }
            if (v > vmax) { vmax = v; tmax = t; }
        }
        auto refine = [&](double t0, int sign) {
            double lo = std::max(0.0, t0 - 1.0 / n);
            double hi = std::min(1.0, t0 + 1.0 / n);
            const double gr = 0.6180339887498949;
            double a = lo, b = hi;
            double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
            double f1 = sign * raw_eval(x1), f2 = sign * raw_eval(x2);
            while (b - a > 1e-10) {
                if (f1 < f2) {
                    b = x2; x2 = x1; f2 = f1;
                    x1 = b - gr * (b - a); f1 = sign * raw_eval(x1);
                } else {
                    a = x1; x1 = x2; f1 = f2;
                    x2 = a + gr * (b - a); f2 = sign * raw_eval(x2);
                }
            }
            return raw_eval(0.5 * (a + b));
        };
        c_ = std::min(vmin, refine(tmin, +1));
        d_ = std::max(vmax, refine(tmax, -1));
    }

    Kind kind_;
    std::vector<double> params_;
    std::vector<double> slopes_;  // table kind only
    double c_ = 0.0, d_ = 0.0;
    double lipschitz_ = 0.0;
    double min_set_dimension_ = 0.0;
};

}  // namespace mlm

#endif  // MLM_ALPHA_HPP
