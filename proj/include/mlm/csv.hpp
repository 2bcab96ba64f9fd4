#ifndef MLM_CSV_HPP
#define MLM_CSV_HPP

#include <cstdio>
#include <ostream>
#include <string>

#include "mlm/extended_real.hpp"
#include "mlm/shotnoise.hpp"
#include "mlm/spectra_theory.hpp"

namespace mlm {

// Shortest decimal that parses back to the same double.
inline std::string format_double(double x) {
    char buf[32];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        double back = 0.0;
        std::sscanf(buf, "%lf", &back);
        if (back == x) break;
    }
    return buf;
}

inline std::string format_extended(const ExtendedReal& v) {
    return v.is_finite() ? format_double(v.finite_value()) : std::string("-inf");
}

inline void write_path_csv(std::ostream& os, const SamplePath& path) {
    os << "# process=" << process_name(path.kind) << " seed=" << path.seed
       << " N=" << path.N << " n=" << path.n << "\n";
    os << "# alpha=" << path.alpha_desc << "\n";
    os << "t,value\n";
    for (std::size_t j = 0; j <= path.n; ++j)
        os << format_double(static_cast<double>(j) / static_cast<double>(path.n))
           << ',' << format_double(path.values[j]) << "\n";
}

inline void write_curve_csv(std::ostream& os, const SpectrumCurve& curve) {
    const bool with_flags = !curve.reliable.empty();
    os << "x,value";
    if (with_flags) os << ",reliable";
    os << "\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        os << format_double(curve.grid[i]) << ',' << format_extended(curve.values[i]);
        if (with_flags) os << ',' << (curve.reliable[i] ? 1 : 0);
        os << "\n";
    }
}

}  // namespace mlm

#endif  // MLM_CSV_HPP
