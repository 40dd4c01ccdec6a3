#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

#include "lassoda/distributions.hpp"
#include "lassoda/error.hpp"
#include "lassoda/model.hpp"
#include "lassoda/random.hpp"
#include "lassoda/special.hpp"

namespace lassoda {

struct SyntheticData {
    Dataset data;
    double true_alpha = 0.0;
    Eigen::VectorXd true_beta;
};

// Standard-normal covariates, ceil(sparsity * p) zeroed coefficients (the
// trailing block), responses drawn from the chosen likelihood at the true
// parameters. theta and gamma are fixed at 1; lambda_true is recorded as the
// dataset's penalty hyperparameter.
inline SyntheticData generate_synthetic(ModelKind kind, int n, int p, double lambda_true,
                                        double sparsity, std::uint64_t seed) {
    if (n < 1 || p < 1) {
        throw ParameterError("generate_synthetic: need n >= 1 and p >= 1");
    }
    if (!(sparsity >= 0.0 && sparsity <= 1.0)) {
        throw ParameterError("generate_synthetic: sparsity must lie in [0, 1]");
    }
    if (!(lambda_true > 0.0) || !std::isfinite(lambda_true)) {
        throw ParameterError("generate_synthetic: lambda_true must be positive and finite");
    }
    RandomStream rng(seed);
    SyntheticData out;

    Eigen::MatrixXd x(n, p);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) {
            x(i, j) = rng.normal();
        }
    }

    const int zeros = static_cast<int>(std::ceil(sparsity * p));
    out.true_beta = Eigen::VectorXd::Zero(p);
    for (int j = 0; j < p - zeros; ++j) {
        out.true_beta[j] = rng.normal();
    }
    out.true_alpha = rng.normal();

    out.data.kind = kind;
    out.data.design = DesignMatrix::from_covariates(x);
    out.data.hyper.lambda = lambda_true;
    out.data.hyper.theta = 1.0;
    if (kind == ModelKind::hetero_gaussian) {
        out.data.hyper.gamma = 1.0;
    }

    const Eigen::VectorXd s = (out.true_alpha + (x * out.true_beta).array()).matrix();
    out.data.y.resize(n);
    switch (kind) {
        case ModelKind::probit:
            for (int i = 0; i < n; ++i) {
                out.data.y[i] = (s[i] + rng.normal() > 0.0) ? 1.0 : 0.0;
            }
            break;
        case ModelKind::logistic:
            for (int i = 0; i < n; ++i) {
                out.data.y[i] = (rng.uniform() < 1.0 / (1.0 + std::exp(-s[i]))) ? 1.0 : 0.0;
            }
            break;
        case ModelKind::hetero_gaussian:
            for (int i = 0; i < n; ++i) {
                out.data.y[i] = s[i] + sample_laplace(rng) / *out.data.hyper.gamma;
            }
            break;
    }
    out.data.validate();
    return out;
}

}  // namespace lassoda
