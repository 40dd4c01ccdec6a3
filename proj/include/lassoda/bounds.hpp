#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <utility>

#include "lassoda/error.hpp"
#include "lassoda/linalg.hpp"
#include "lassoda/model.hpp"
#include "lassoda/random.hpp"
#include "lassoda/sampler.hpp"

namespace lassoda {

// Everything the certificate engine produces for one dataset. rho is the
// geometric convergence rate 1 - gap_lower; t_mix the step budget needed to
// push warm-start TV error below the requested eps_bar.
struct BoundReport {
    double sigma_max_scaled = 0.0;
    double delta = 0.0;
    double epsilon = 0.0;
    double d = 0.0;
    double iso_lower = 0.0;
    double gap_lower = 0.0;
    double rho = 0.0;
    double log_warmness = 0.0;
    std::int64_t t_mix = 1;
    double c1 = 1.0;
    double m = 0.0;
    double m_prime = 0.0;
    double m_double_prime = 0.0;
};

// Mean shift and diagonal variance of the warm-start Gaussian in the
// (alpha, lambda beta) coordinates.
struct WarmStart {
    Eigen::VectorXd eta;
    double l = 0.0;
    Eigen::VectorXd vl_diag;
};

namespace detail {

inline double sigma_max_scaled_gram(const Dataset& data) {
    const ScaledDesign scaled = build_scaled_design(data.design, data.hyper.lambda);
    return sigma_max(scaled.rows.transpose() * scaled.rows);
}

}  // namespace detail

// Close-coupling constants: epsilon = 1/2 for every model; delta is the
// per-model minimum, each branch capped by 1/(32 sqrt(p)).
inline std::pair<double, double> coupling_constants(const Dataset& data) {
    data.validate();
    const double sigma = detail::sigma_max_scaled_gram(data);
    const double p_cap = 1.0 / (32.0 * std::sqrt(static_cast<double>(data.p())));
    double delta = p_cap;
    switch (data.kind) {
        case ModelKind::probit:
            delta = std::min(0.5 / std::sqrt(sigma), p_cap);
            break;
        case ModelKind::logistic:
            delta = std::min(1.0 / std::sqrt(sigma), p_cap);
            break;
        case ModelKind::hetero_gaussian:
            delta = std::min(
                1.0 / (32.0 * data.gamma() * std::sqrt(static_cast<double>(data.n()) * sigma)),
                p_cap);
            break;
    }
    return {delta, 0.5};
}

// General density-ratio constant from a quadratic likelihood majorization:
// log C + ell0 + (1/2) log((L + theta^2)/theta^2)
//       + p max{log(4/(sqrt 5 - 1)), log(2 sqrt L/(sqrt 5 - 1))}.
inline double density_ratio_from_certificate(const SmoothnessCertificate& cert, double theta,
                                             int p) {
    if (!(theta > 0.0) || p < 1 || !(cert.l >= 0.0)) {
        throw ParameterError("density_ratio_from_certificate: need theta > 0, p >= 1, L >= 0");
    }
    const double golden = std::sqrt(5.0) - 1.0;
    const double flat_branch = std::log(4.0 / golden);
    double branch = flat_branch;
    if (cert.l > 0.0) {
        branch = std::max(flat_branch, std::log(2.0 * std::sqrt(cert.l) / golden));
    }
    return cert.log_c + cert.ell0 +
           0.5 * std::log((cert.l + theta * theta) / (theta * theta)) +
           static_cast<double>(p) * branch;
}

inline double density_ratio_D(const Dataset& data) {
    return density_ratio_from_certificate(smoothness_certificate(data), data.hyper.theta,
                                          data.p());
}

struct IsoGap {
    double iso_lower = 0.0;
    double gap_lower = 0.0;
    double rho = 0.0;
};

// Isoperimetric lower bound c1 min{1, theta}/(D+1), the induced spectral-gap
// lower bound (1/32) eps^2 min{1, delta^2 iso^2 / 4}, and rho = 1 - gap.
inline IsoGap contraction_rho(double delta, double epsilon, double d, double theta, double c1) {
    if (!(delta > 0.0) || !(epsilon > 0.0) || !(c1 > 0.0) || !(theta > 0.0)) {
        throw ParameterError("contraction_rho: delta, epsilon, theta, c1 must be positive");
    }
    if (!(d >= 0.0)) {
        throw ParameterError("contraction_rho: D must be nonnegative");
    }
    IsoGap out;
    out.iso_lower = c1 * std::min(1.0, theta) / (d + 1.0);
    const double branch = std::min(1.0, 0.25 * delta * delta * out.iso_lower * out.iso_lower);
    out.gap_lower = (1.0 / 32.0) * epsilon * epsilon * branch;
    out.rho = 1.0 - out.gap_lower;
    return out;
}

// Warm-start Gaussian: the likelihood-majorization (eta, L) with diagonal
// variances (1/(L + theta^2), then p copies of 1/(L + 1)).
inline WarmStart warm_start(const Dataset& data) {
    const SmoothnessCertificate cert = smoothness_certificate(data);
    const double theta = data.hyper.theta;
    WarmStart ws;
    ws.eta = cert.eta;
    ws.l = cert.l;
    ws.vl_diag.resize(1 + data.p());
    ws.vl_diag[0] = 1.0 / (cert.l + theta * theta);
    for (int j = 1; j <= data.p(); ++j) {
        ws.vl_diag[j] = 1.0 / (cert.l + 1.0);
    }
    return ws;
}

// Draws (alpha, lambda beta) ~ N(-V_L eta, V_L) and undoes the coefficient
// scaling before returning.
inline std::pair<double, Eigen::VectorXd> sample_warm_start(const WarmStart& ws, double lambda,
                                                            RandomStream& rng) {
    if (ws.eta.size() != ws.vl_diag.size() || ws.eta.size() < 2) {
        throw ParameterError("sample_warm_start: inconsistent warm-start dimensions");
    }
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ParameterError("sample_warm_start: lambda must be positive and finite");
    }
    for (int j = 0; j < ws.vl_diag.size(); ++j) {
        if (!(ws.vl_diag[j] > 0.0)) {
            throw ParameterError("sample_warm_start: variances must be positive");
        }
    }
    const int d = static_cast<int>(ws.eta.size());
    Eigen::VectorXd v(d);
    for (int j = 0; j < d; ++j) {
        v[j] = -ws.vl_diag[j] * ws.eta[j] + std::sqrt(ws.vl_diag[j]) * rng.normal();
    }
    Eigen::VectorXd beta = v.tail(d - 1) / lambda;
    return {v[0], beta};
}

// Initializer for run(): fresh warm-start draw per chain.
inline InitialDistribution warm_start_initializer(const Dataset& data) {
    WarmStart ws = warm_start(data);
    const double lambda = data.hyper.lambda;
    return [ws = std::move(ws), lambda](RandomStream& rng) {
        return sample_warm_start(ws, lambda, rng);
    };
}

// Upper bound on the log warmness of the warm-start Gaussian relative to the
// posterior:
// (1/2) log(L/theta^2 + 1) + (p/2) log(L + 1) - (1/2) eta' V_L eta
//       + log C + ell0 + p log 2 + p/2.
inline double log_warmness_general(double ell0, const Eigen::VectorXd& eta, double l,
                                   double log_c, double theta, int p) {
    if (!(theta > 0.0) || p < 1 || !(l >= 0.0) || eta.size() != 1 + p) {
        throw ParameterError("log_warmness_general: bad arguments");
    }
    double quad = eta[0] * eta[0] / (l + theta * theta);
    for (int j = 1; j <= p; ++j) {
        quad += eta[j] * eta[j] / (l + 1.0);
    }
    return 0.5 * std::log(l / (theta * theta) + 1.0) + 0.5 * p * std::log(l + 1.0) -
           0.5 * quad + log_c + ell0 + p * std::log(2.0) + 0.5 * p;
}

inline double log_warmness_bound(const Dataset& data) {
    const SmoothnessCertificate cert = smoothness_certificate(data);
    return log_warmness_general(cert.ell0, cert.eta, cert.l, cert.log_c, data.hyper.theta,
                                data.p());
}

// Step budget: ceil((log_warmness - log eps_bar)/(-log rho)), at least 1.
inline std::int64_t mixing_time_budget(double log_warmness, double rho, double eps_bar) {
    if (!(rho > 0.0 && rho < 1.0)) {
        throw ParameterError("mixing_time_budget: rho must lie in (0, 1)");
    }
    if (!(eps_bar > 0.0 && eps_bar < 1.0)) {
        throw ParameterError("mixing_time_budget: eps_bar must lie in (0, 1)");
    }
    const double steps = (log_warmness - std::log(eps_bar)) / (-std::log(rho));
    if (!(steps >= 1.0)) return 1;
    return static_cast<std::int64_t>(std::ceil(steps));
}

inline BoundReport full_report(const Dataset& data, double c1, double eps_bar) {
    if (!(c1 > 0.0) || !std::isfinite(c1)) {
        throw ParameterError("full_report: c1 must be positive and finite");
    }
    data.validate();
    BoundReport report;
    report.c1 = c1;
    report.sigma_max_scaled = detail::sigma_max_scaled_gram(data);
    auto [delta, epsilon] = coupling_constants(data);
    report.delta = delta;
    report.epsilon = epsilon;
    report.d = density_ratio_D(data);
    const IsoGap iso = contraction_rho(delta, epsilon, report.d, data.hyper.theta, c1);
    report.iso_lower = iso.iso_lower;
    report.gap_lower = iso.gap_lower;
    report.rho = iso.rho;
    report.log_warmness = log_warmness_bound(data);
    report.t_mix = mixing_time_budget(report.log_warmness, report.rho, eps_bar);
    const double theta2 = data.hyper.theta * data.hyper.theta;
    report.m = (1.0 / theta2 + 1.0) * report.sigma_max_scaled;
    report.m_prime = report.sigma_max_scaled + 1.0;
    report.m_double_prime = report.sigma_max_scaled / theta2 + 1.0;
    return report;
}

}  // namespace lassoda
