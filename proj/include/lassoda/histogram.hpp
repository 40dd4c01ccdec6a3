#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "lassoda/error.hpp"

namespace lassoda {

// Equal-width binned probability vector. `mass` sums to 1; the binning is
// identified by (lo, hi, bins).
struct Histogram {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> mass;

    int bins() const { return static_cast<int>(mass.size()); }
};

// Bins samples over [lo, hi]; out-of-range values are clamped into the end
// bins so the mass always sums to 1.
inline Histogram histogram_from_samples(std::span<const double> values, double lo, double hi,
                                        int bins) {
    if (!(lo < hi) || bins < 1) {
        throw ParameterError("histogram_from_samples: need lo < hi and bins >= 1");
    }
    if (values.empty()) {
        throw ParameterError("histogram_from_samples: need at least one sample");
    }
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.mass.assign(static_cast<std::size_t>(bins), 0.0);
    const double width = (hi - lo) / bins;
    for (double v : values) {
        int idx = static_cast<int>(std::floor((v - lo) / width));
        if (idx < 0) idx = 0;
        if (idx >= bins) idx = bins - 1;
        h.mass[static_cast<std::size_t>(idx)] += 1.0;
    }
    const double total = static_cast<double>(values.size());
    for (double& m : h.mass) m /= total;
    return h;
}

// Total variation distance between two probability vectors on the same
// binning: (1/2) sum |p_i - q_i|.
inline double discrete_tv(const Histogram& p1, const Histogram& p2) {
    if (p1.bins() != p2.bins() || p1.bins() < 1) {
        throw ParameterError("discrete_tv: binning mismatch");
    }
    if (p1.lo != p2.lo || p1.hi != p2.hi) {
        throw ParameterError("discrete_tv: binning mismatch");
    }
    auto check_sum = [](const Histogram& h) {
        double s = 0.0;
        for (double m : h.mass) s += m;
        if (std::abs(s - 1.0) > 1e-9) {
            throw ParameterError("discrete_tv: histogram mass must sum to 1 within 1e-9");
        }
    };
    check_sum(p1);
    check_sum(p2);
    double acc = 0.0;
    for (int i = 0; i < p1.bins(); ++i) {
        acc += std::abs(p1.mass[static_cast<std::size_t>(i)] - p2.mass[static_cast<std::size_t>(i)]);
    }
    return 0.5 * acc;
}

}  // namespace lassoda
