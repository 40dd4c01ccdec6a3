#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "lassoda/error.hpp"
#include "lassoda/histogram.hpp"
#include "lassoda/oracle.hpp"
#include "lassoda/sampler.hpp"

namespace lassoda {

struct DiagnosticsReport {
    std::vector<double> tv_to_oracle;      // alpha marginal, then beta1
    std::vector<double> ess;               // per coordinate: alpha, b1, ..., bp
    std::vector<std::vector<double>> acf;  // per coordinate, lags 0..min(50, len-1)
    std::vector<bool> degenerate;          // zero-variance coordinates
    double runtime_seconds = 0.0;          // 0 when the run's wall clock is unknown
    std::int64_t iterations_used = 0;
    int bins = 0;
};

namespace detail {

// Rebin a gridded marginal (point mass at each node) into `bins` equal-width
// bins spanning the node range.
inline Histogram rebin_marginal(const Eigen::VectorXd& nodes, const Eigen::VectorXd& masses,
                                double lo, double hi, int bins) {
    Histogram h;
    h.lo = lo;
    h.hi = hi;
    h.mass.assign(static_cast<std::size_t>(bins), 0.0);
    const double width = (hi - lo) / bins;
    for (int k = 0; k < nodes.size(); ++k) {
        int idx = static_cast<int>(std::floor((nodes[k] - lo) / width));
        idx = std::clamp(idx, 0, bins - 1);
        h.mass[static_cast<std::size_t>(idx)] += masses[k];
    }
    return h;
}

}  // namespace detail

// Bins the chain's (alpha, beta1) marginals over the oracle's axes and
// returns the TV distance of each against the oracle marginal.
inline std::vector<double> tv_to_oracle(const SampleStore& samples, const OracleGrid& oracle,
                                        int bins) {
    if (samples.rows.empty()) {
        throw ParameterError("tv_to_oracle: sample store is empty");
    }
    if (samples.p != 1) {
        throw ParameterError("tv_to_oracle: oracle comparisons need p = 1 samples");
    }
    if (bins < 10) {
        throw ParameterError("tv_to_oracle: bins must be >= 10");
    }
    std::vector<double> alphas, betas;
    alphas.reserve(samples.rows.size());
    betas.reserve(samples.rows.size());
    for (const auto& row : samples.rows) {
        alphas.push_back(row.alpha);
        betas.push_back(row.beta[0]);
    }
    Histogram chain_alpha = histogram_from_samples(alphas, oracle.alpha_lo, oracle.alpha_hi, bins);
    Histogram chain_beta = histogram_from_samples(betas, oracle.beta_lo, oracle.beta_hi, bins);
    Histogram oracle_alpha = detail::rebin_marginal(oracle.alpha_nodes, oracle.alpha_marginal(),
                                                    oracle.alpha_lo, oracle.alpha_hi, bins);
    Histogram oracle_beta = detail::rebin_marginal(oracle.beta_nodes, oracle.beta_marginal(),
                                                   oracle.beta_lo, oracle.beta_hi, bins);
    return {discrete_tv(chain_alpha, oracle_alpha), discrete_tv(chain_beta, oracle_beta)};
}

namespace detail {

// Biased-normalization autocovariances up to max_lag inclusive.
inline std::vector<double> autocovariances(const std::vector<double>& x, int max_lag) {
    const int n = static_cast<int>(x.size());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    std::vector<double> gamma(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int k = 0; k <= max_lag; ++k) {
        double acc = 0.0;
        for (int t = 0; t + k < n; ++t) {
            acc += (x[t] - mean) * (x[t + k] - mean);
        }
        gamma[static_cast<std::size_t>(k)] = acc / n;
    }
    return gamma;
}

// Initial-positive-sequence asymptotic variance: -gamma0 + 2 sum of the
// leading positive (gamma_{2m} + gamma_{2m+1}) pairs.
inline double ips_variance(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    const int max_lag = n - 1;
    std::vector<double> gamma = autocovariances(x, max_lag);
    double sigma2 = -gamma[0];
    for (int m = 0; 2 * m + 1 <= max_lag; ++m) {
        double pair = gamma[static_cast<std::size_t>(2 * m)] +
                      gamma[static_cast<std::size_t>(2 * m + 1)];
        if (pair <= 0.0) break;
        sigma2 += 2.0 * pair;
    }
    return sigma2;
}

}  // namespace detail

// Per-coordinate effective sample size (initial-positive-sequence estimator,
// summed over chains) and lag-k autocorrelations (k <= 50, from the longest
// chain). Zero-variance coordinates are flagged degenerate with ESS 0.
inline void ess_and_acf(const SampleStore& samples, DiagnosticsReport& report) {
    if (samples.rows.size() < 100) {
        throw ParameterError("ess_and_acf: need at least 100 stored states");
    }
    std::map<int, std::vector<std::size_t>> by_chain;
    for (std::size_t r = 0; r < samples.rows.size(); ++r) {
        by_chain[samples.rows[r].chain].push_back(r);
    }
    int longest_chain = by_chain.begin()->first;
    for (const auto& [chain, idx] : by_chain) {
        if (idx.size() > by_chain[longest_chain].size()) longest_chain = chain;
    }

    const int coords = 1 + samples.p;
    report.ess.assign(static_cast<std::size_t>(coords), 0.0);
    report.acf.assign(static_cast<std::size_t>(coords), {});
    report.degenerate.assign(static_cast<std::size_t>(coords), false);

    auto coordinate_series = [&](const std::vector<std::size_t>& idx, int k) {
        std::vector<double> x;
        x.reserve(idx.size());
        for (std::size_t r : idx) {
            const auto& row = samples.rows[r];
            x.push_back(k == 0 ? row.alpha : row.beta[k - 1]);
        }
        return x;
    };

    for (int k = 0; k < coords; ++k) {
        double total_ess = 0.0;
        bool any_variance = false;
        for (const auto& [chain, idx] : by_chain) {
            std::vector<double> x = coordinate_series(idx, k);
            if (x.size() < 2) continue;
            std::vector<double> gamma2 = detail::autocovariances(x, 1);
            if (gamma2[0] <= 0.0) continue;  // constant within this chain
            any_variance = true;
            double sigma2 = detail::ips_variance(x);
            const double n = static_cast<double>(x.size());
            double ess = (sigma2 > 0.0) ? n * gamma2[0] / sigma2 : n;
            total_ess += std::min(ess, n);
        }
        report.degenerate[static_cast<std::size_t>(k)] = !any_variance;
        report.ess[static_cast<std::size_t>(k)] = total_ess;

        std::vector<double> x = coordinate_series(by_chain[longest_chain], k);
        const int max_lag = std::min<int>(50, static_cast<int>(x.size()) - 1);
        std::vector<double> gamma = detail::autocovariances(x, max_lag);
        std::vector<double> acf(static_cast<std::size_t>(max_lag) + 1, 0.0);
        acf[0] = 1.0;
        if (gamma[0] > 0.0) {
            for (int lag = 1; lag <= max_lag; ++lag) {
                acf[static_cast<std::size_t>(lag)] = gamma[static_cast<std::size_t>(lag)] / gamma[0];
            }
        }
        report.acf[static_cast<std::size_t>(k)] = std::move(acf);
    }
}

// Full report against an oracle: marginal TVs plus ESS/ACF. runtime_seconds
// is left for callers that timed the chain themselves.
inline DiagnosticsReport diagnostics_report(const SampleStore& samples, const OracleGrid& oracle,
                                            int bins) {
    DiagnosticsReport report;
    report.bins = bins;
    report.tv_to_oracle = tv_to_oracle(samples, oracle, bins);
    ess_and_acf(samples, report);
    for (const auto& row : samples.rows) {
        report.iterations_used = std::max(report.iterations_used, row.iter);
    }
    return report;
}

}  // namespace lassoda
