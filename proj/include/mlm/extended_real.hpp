#ifndef MLM_EXTENDED_REAL_HPP
#define MLM_EXTENDED_REAL_HPP

#include <cmath>
#include <limits>
#include <string>

namespace mlm {

// Spectrum values are either finite or minus infinity. A tagged type keeps
// the sentinel out of ordinary arithmetic.
class ExtendedReal {
public:
    constexpr ExtendedReal() : value_(0.0), finite_(true) {}
    constexpr ExtendedReal(double v) : value_(v), finite_(true) {}

    static constexpr ExtendedReal minus_infinity() {
        ExtendedReal e;
        e.finite_ = false;
        e.value_ = -std::numeric_limits<double>::infinity();
        return e;
    }

    constexpr bool is_finite() const { return finite_; }
    constexpr bool is_minus_infinity() const { return !finite_; }

    // Finite value; minus infinity maps to -inf so comparisons still work.
    constexpr double as_double() const { return value_; }

    double finite_value() const { return value_; }

    friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.finite_ != b.finite_) return false;
        return !a.finite_ || a.value_ == b.value_;
    }
    friend constexpr bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
        return a.as_double() < b.as_double();
    }
    friend constexpr bool operator<=(const ExtendedReal& a, const ExtendedReal& b) {
        return a == b || a < b;
    }

    std::string to_string() const {
        if (!finite_) return "-inf";
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", value_);
        return buf;
    }

private:
    double value_;
    bool finite_;
};

}  // namespace mlm

#endif  // MLM_EXTENDED_REAL_HPP
