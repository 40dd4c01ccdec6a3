#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

#include "lassoda/error.hpp"
#include "lassoda/random.hpp"
#include "lassoda/special.hpp"

namespace lassoda {

// Inverse Gaussian with mean mu and shape parameter (the density is
// sqrt(shape/(2 pi u^3)) exp(-shape (u - mu)^2 / (2 mu^2 u))). mu may be
// +infinity, in which case the law degenerates to the one-sided stable
// (Levy) law with the same shape.
struct InvGaussianParams {
    double mu = 1.0;
    double shape = 1.0;

    // Parametrization used by the augmentation updates: drift b, scale c give
    // mean c/|b| and shape c^2. b == 0 yields the Levy limit.
    static InvGaussianParams from_drift(double b, double c) {
        if (!(c > 0.0) || !std::isfinite(c)) {
            throw ParameterError("InvGaussianParams: scale c must be positive and finite");
        }
        InvGaussianParams out;
        out.shape = c * c;
        double ab = std::abs(b);
        out.mu = (ab == 0.0) ? std::numeric_limits<double>::infinity() : c / ab;
        return out;
    }
};

// Michael-Schucany-Haas transform sampler. The smaller root of the fitted
// quadratic is computed as mu * eps / (1 + sqrt(1 + eps))^2 with
// eps = 4 shape / (mu y), which stays stable for both tiny and huge means;
// mu = +infinity falls back to shape / Z^2.
inline double sample_inv_gaussian(const InvGaussianParams& params, RandomStream& rng) {
    const double mu = params.mu;
    const double lam = params.shape;
    if (!(lam > 0.0) || !std::isfinite(lam) || !(mu > 0.0)) {
        throw ParameterError("sample_inv_gaussian: need mu > 0 and finite shape > 0");
    }
    if (std::isinf(mu)) {
        double z;
        do {
            z = rng.normal();
        } while (z == 0.0);
        return lam / (z * z);
    }
    double z;
    do {
        z = rng.normal();
    } while (z == 0.0);
    const double y = z * z;
    const double eps = 4.0 * lam / (mu * y);
    const double root = 1.0 + std::sqrt(1.0 + eps);
    double x = (4.0 * lam / y) / (root * root);
    if (x <= 0.0) x = std::numeric_limits<double>::min();
    if (rng.uniform() * (mu + x) <= mu) {
        return x;
    }
    return mu * (mu / x);
}

// KL divergence between the augmentation kernels h(.; b, c) and h(.; b', c):
// c(|b| - |b'|) - c(b^2 - b'^2)/(2|b|), valid for |b| >= |b'|.
inline double inv_gaussian_kl(double b, double b_prime, double c) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw ParameterError("inv_gaussian_kl: scale c must be positive and finite");
    }
    const double ab = std::abs(b);
    const double abp = std::abs(b_prime);
    if (ab < abp) {
        throw ParameterError("inv_gaussian_kl: requires |b| >= |b_prime|; swap the arguments");
    }
    if (ab == 0.0) return 0.0;
    return c * (ab - abp) - c * (b * b - b_prime * b_prime) / (2.0 * ab);
}

// Total-variation bound between q-fold products of augmentation kernels at
// coefficient vectors s1 and s2: sqrt(2 c) q^{1/4} ||s1 - s2||_2^{1/2}.
inline double inv_gaussian_product_tv_bound(std::span<const double> s1,
                                            std::span<const double> s2, double c) {
    if (s1.size() != s2.size() || s1.empty()) {
        throw ParameterError("inv_gaussian_product_tv_bound: vectors must have equal nonzero length");
    }
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw ParameterError("inv_gaussian_product_tv_bound: scale c must be positive and finite");
    }
    double ss = 0.0;
    for (std::size_t i = 0; i < s1.size(); ++i) {
        double d = s1[i] - s2[i];
        ss += d * d;
    }
    const double q = static_cast<double>(s1.size());
    return std::sqrt(2.0 * c) * std::pow(q, 0.25) * std::pow(std::sqrt(ss), 0.5);
}

// One-sided truncation of a unit-variance normal.
struct TruncatedNormalParams {
    enum class Side { nonnegative, negative };
    double mean = 0.0;
    Side side = Side::nonnegative;
};

namespace detail {

// Kept-side probabilities below this switch from quantile inversion to the
// shifted-exponential rejection sampler.
inline constexpr double kTruncTailProbability = 1e-2;

// Standard normal conditioned on [a, infinity).
inline double truncated_std_normal_lower(double a, RandomStream& rng) {
    const double kept = normal_cdf(-a);
    if (kept >= kTruncTailProbability) {
        double q = kept * (1.0 - rng.uniform());  // uniform on (0, kept]
        return -normal_quantile(q);
    }
    // Robert's shifted-exponential rejection with the optimal rate.
    const double rate = 0.5 * (a + std::sqrt(a * a + 4.0));
    while (true) {
        double z = a + rng.exponential() / rate;
        double d = z - rate;
        if (rng.uniform() <= std::exp(-0.5 * d * d)) return z;
    }
}

}  // namespace detail

inline double sample_truncated_normal(const TruncatedNormalParams& params, RandomStream& rng) {
    if (!std::isfinite(params.mean)) {
        throw ParameterError("sample_truncated_normal: mean must be finite");
    }
    if (params.side == TruncatedNormalParams::Side::nonnegative) {
        double z = detail::truncated_std_normal_lower(-params.mean, rng);
        double x = params.mean + z;
        return x < 0.0 ? 0.0 : x;
    }
    double y;
    do {
        double z = detail::truncated_std_normal_lower(params.mean, rng);
        y = -params.mean + z;
    } while (y <= 0.0);
    return -y;
}

namespace detail {

// Pieces of the alternating-series sampler for the tilted Jacobi law J*(1, z).
inline constexpr double kPgTrunc = 0.63661977236758134308;  // 2/pi

// n-th series coefficient a_n(x) of the J* density, piecewise around kPgTrunc.
inline double pg_series_coef(int n, double x) {
    const double h = n + 0.5;
    double f = std::log(constants::pi) + std::log(h);
    if (x <= kPgTrunc) {
        f += 1.5 * (std::log(2.0) - std::log(constants::pi) - std::log(x)) - 2.0 * h * h / x;
    } else {
        f += -0.5 * x * constants::pi * constants::pi * h * h;
    }
    return std::exp(f);
}

// Inverse Gaussian IG(1/z, 1) conditioned on (0, kPgTrunc). For means above
// the truncation point (small z, including z = 0) proposes from the inverted
// Gamma(1/2, 1/2) tail; otherwise retries plain draws.
inline double pg_trunc_inv_gauss(double z, RandomStream& rng) {
    const double t = kPgTrunc;
    if (z * t < 1.0) {
        while (true) {
            double g;
            while (true) {
                g = 2.0 * rng.exponential() + 0.5 * constants::pi;
                if (rng.uniform() <= std::sqrt(0.5 * constants::pi / g)) break;
            }
            double x = 1.0 / g;
            if (std::log(rng.uniform_pos()) <= -0.5 * z * z * x) return x;
        }
    }
    InvGaussianParams ig{1.0 / z, 1.0};
    while (true) {
        double x = sample_inv_gaussian(ig, rng);
        if (x < t) return x;
    }
}

}  // namespace detail

// Exact draw from the logistic augmentation law PG(1, c) by the
// alternating-series accept/reject method on the tilted Jacobi density.
inline double sample_polya_gamma_1(double c, RandomStream& rng) {
    if (!std::isfinite(c)) {
        throw ParameterError("sample_polya_gamma_1: tilt must be finite");
    }
    const double t = detail::kPgTrunc;
    const double z = 0.5 * std::abs(c);
    const double k = 0.125 * constants::pi * constants::pi + 0.5 * z * z;

    // Probability of the exponential (right) proposal piece: p/(p+q) with
    // p = (pi/(2K)) e^{-Kt} and q = 2 e^{-z} P(IG(1/z,1) <= t).
    const double w = std::sqrt(0.5 * constants::pi);
    const double log_scale = std::log(4.0) - std::log(constants::pi) + std::log(k) + k * t;
    const double q_over_p =
        std::exp(log_scale - z + log_normal_cdf(w * (t * z - 1.0))) +
        std::exp(log_scale + z + log_normal_cdf(-w * (t * z + 1.0)));
    const double exp_piece = 1.0 / (1.0 + q_over_p);

    while (true) {
        double x;
        if (rng.uniform() < exp_piece) {
            x = t + rng.exponential() / k;
        } else {
            x = detail::pg_trunc_inv_gauss(z, rng);
        }
        double s = detail::pg_series_coef(0, x);
        double y = rng.uniform() * s;
        int n = 0;
        while (true) {
            ++n;
            if (n % 2 == 1) {
                s -= detail::pg_series_coef(n, x);
                if (y <= s) return 0.25 * x;
            } else {
                s += detail::pg_series_coef(n, x);
                if (y > s) break;
            }
        }
    }
}

// Unit-rate Laplace variate.
inline double sample_laplace(RandomStream& rng) {
    double e = rng.exponential();
    return rng.uniform() < 0.5 ? -e : e;
}

}  // namespace lassoda
