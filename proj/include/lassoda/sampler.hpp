#pragma once

#include <Eigen/Dense>
#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lassoda/distributions.hpp"
#include "lassoda/error.hpp"
#include "lassoda/linalg.hpp"
#include "lassoda/model.hpp"
#include "lassoda/random.hpp"

namespace lassoda {

struct ChainState {
    double alpha = 0.0;
    Eigen::VectorXd beta;
    std::int64_t iteration = 0;
};

struct SamplerConfig {
    std::int64_t iterations = 1;
    std::int64_t burn_in = 0;
    std::int64_t thin = 1;
    int chains = 1;
    std::uint64_t seed = 0;

    void validate() const {
        if (iterations < 1) throw ParameterError("SamplerConfig: iterations must be >= 1");
        if (burn_in < 0) throw ParameterError("SamplerConfig: burn_in must be >= 0");
        if (burn_in >= iterations) {
            throw ParameterError("SamplerConfig: burn_in must be < iterations");
        }
        if (thin < 1) throw ParameterError("SamplerConfig: thin must be >= 1");
        if (chains < 1) throw ParameterError("SamplerConfig: chains must be >= 1");
    }
};

// Draws the chain's starting point. The warm-start initializer lives with the
// bounds module; point_mass_init is for debugging from a fixed state.
using InitialDistribution = std::function<std::pair<double, Eigen::VectorXd>(RandomStream&)>;

inline InitialDistribution point_mass_init(double alpha, Eigen::VectorXd beta) {
    return [alpha, beta = std::move(beta)](RandomStream&) { return std::make_pair(alpha, beta); };
}

// Coefficient-precision update: xi_j = 1/tau_j ~ InvGaussian(lambda/|beta_j|,
// lambda^2) independently, with beta_j = 0 sent to the Levy limit.
inline Eigen::VectorXd update_xi(const Eigen::VectorXd& beta, double lambda, RandomStream& rng) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ParameterError("update_xi: lambda must be positive and finite");
    }
    Eigen::VectorXd xi(beta.size());
    for (int j = 0; j < beta.size(); ++j) {
        xi[j] = sample_inv_gaussian(InvGaussianParams::from_drift(beta[j], lambda), rng);
    }
    return xi;
}

namespace detail {

// Jitter added to the conditional precision diagonal on a first Cholesky
// failure; a second failure aborts the chain.
inline constexpr double kCholeskyRetryJitter = 1e-10;

inline Eigen::VectorXd sample_conditional(PrecisionGaussian g, RandomStream& rng) {
    try {
        return sample_precision_gaussian(g, rng);
    } catch (const NumericError&) {
        g.precision.diagonal().array() += kCholeskyRetryJitter;
        return sample_precision_gaussian(g, rng);
    }
}

}  // namespace detail

// One full update: coefficient precisions, then the latent vector, then the
// joint Gaussian draw of (alpha, beta).
inline ChainState step(const Dataset& data, const ChainState& state, RandomStream& rng) {
    if (state.beta.size() != data.p()) {
        throw ParameterError("step: state dimension must match data");
    }
    Eigen::VectorXd xi = update_xi(state.beta, data.hyper.lambda, rng);
    LatentVector latent = draw_latent(data, state.alpha, state.beta, rng);
    PrecisionGaussian g = conditional_gaussian(data, latent, xi);
    Eigen::VectorXd v = detail::sample_conditional(g, rng);

    ChainState next;
    next.alpha = v[0];
    next.beta = v.tail(data.p());
    next.iteration = state.iteration + 1;
    return next;
}

struct SampleRow {
    int chain = 0;
    std::int64_t iter = 0;
    double alpha = 0.0;
    Eigen::VectorXd beta;
};

struct SampleStore {
    int p = 0;
    std::vector<SampleRow> rows;
};

struct ChainDiagnostics {
    int chain = 0;
    std::int64_t draws = 0;       // stored states
    double seconds = 0.0;         // wall clock for this chain
    bool aborted = false;
    std::int64_t aborted_at = 0;  // iteration of the failure, if aborted
    std::string message;
};

struct RunResult {
    SampleStore samples;
    std::vector<ChainDiagnostics> chains;
};

// Runs `config.chains` independent chains; chain c draws from the stream
// derived from (seed, c). States are recorded at iterations t > burn_in with
// (t - burn_in) divisible by thin. A numeric failure aborts only the chain it
// occurred in and is recorded on its diagnostics.
inline RunResult run(const Dataset& data, const SamplerConfig& config,
                     const InitialDistribution& init) {
    data.validate();
    config.validate();
    RunResult result;
    result.samples.p = data.p();
    for (int c = 0; c < config.chains; ++c) {
        RandomStream rng = RandomStream::for_chain(config.seed, static_cast<std::uint64_t>(c));
        ChainDiagnostics diag;
        diag.chain = c;
        auto started = std::chrono::steady_clock::now();
        ChainState state;
        std::vector<SampleRow> rows;
        try {
            auto [alpha0, beta0] = init(rng);
            if (beta0.size() != data.p()) {
                throw ParameterError("run: initializer dimension must match data");
            }
            state.alpha = alpha0;
            state.beta = beta0;
            state.iteration = 0;
            for (std::int64_t t = 1; t <= config.iterations; ++t) {
                state = step(data, state, rng);
                if (t > config.burn_in && (t - config.burn_in) % config.thin == 0) {
                    SampleRow row;
                    row.chain = c;
                    row.iter = t;
                    row.alpha = state.alpha;
                    row.beta = state.beta;
                    rows.push_back(std::move(row));
                }
            }
        } catch (const NumericError& err) {
            diag.aborted = true;
            diag.aborted_at = state.iteration + 1;
            diag.message = err.what();
        }
        diag.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        diag.draws = static_cast<std::int64_t>(rows.size());
        for (auto& row : rows) result.samples.rows.push_back(std::move(row));
        result.chains.push_back(std::move(diag));
    }
    return result;
}

}  // namespace lassoda
