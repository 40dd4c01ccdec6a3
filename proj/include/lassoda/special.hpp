#pragma once

#include <cmath>
#include <limits>

#include "lassoda/error.hpp"

namespace lassoda {

namespace constants {
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double sqrt2 = 1.41421356237309504880;
inline constexpr double inv_sqrt_2pi = 0.39894228040143267794;
inline constexpr double inv_sqrt_pi = 0.56418958354775628695;
}  // namespace constants

// Scaled complementary error function exp(x^2) erfc(x). Direct product below
// the erfc underflow region, Laplace continued fraction in the far tail.
inline double erfcx(double x) {
    if (x < 0.0) {
        return 2.0 * std::exp(x * x) - erfcx(-x);
    }
    if (x <= 25.0) {
        return std::exp(x * x) * std::erfc(x);
    }
    // erfcx(x) = 1/(sqrt(pi) (x + (1/2)/(x + (2/2)/(x + (3/2)/(x + ...)))))
    double f = x;
    for (int k = 12; k >= 1; --k) {
        f = x + 0.5 * k / f;
    }
    return constants::inv_sqrt_pi / f;
}

inline double normal_pdf(double s) {
    return constants::inv_sqrt_2pi * std::exp(-0.5 * s * s);
}

inline double normal_cdf(double s) {
    return 0.5 * std::erfc(-s / constants::sqrt2);
}

// log Phi(s), stable for arbitrarily negative s.
inline double log_normal_cdf(double s) {
    if (s >= 0.0) {
        return std::log1p(-0.5 * std::erfc(s / constants::sqrt2));
    }
    return std::log(0.5) + std::log(erfcx(-s / constants::sqrt2)) - 0.5 * s * s;
}

// log(1 + exp(x)) without overflow or cancellation.
inline double log1pexp(double x) {
    if (x <= -37.0) return std::exp(x);
    if (x <= 18.0) return std::log1p(std::exp(x));
    if (x <= 33.3) return x + std::exp(-x);
    return x;
}

// Normal quantile, Wichura's AS241 (PPND16). Rational approximations on three
// regimes of r = sqrt(-log(min(p, 1-p))); good to ~1e-15 relative.
inline double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw ParameterError("normal_quantile: p must lie strictly in (0, 1)");
    }
    const double q = p - 0.5;
    double r;
    if (std::abs(q) <= 0.425) {
        r = 0.180625 - q * q;
        const double num =
            (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                  6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
              1.3314166789178437745e+2) * r + 3.3871328727963666080e+0);
        const double den =
            (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                  3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
              4.2313330701600911252e+1) * r + 1.0);
        return q * num / den;
    }
    r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
        x = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        x = num / den;
    }
    return (q < 0.0) ? -x : x;
}

}  // namespace lassoda
