#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>

#include "lassoda/distributions.hpp"
#include "lassoda/error.hpp"
#include "lassoda/linalg.hpp"
#include "lassoda/random.hpp"
#include "lassoda/special.hpp"

namespace lassoda {

enum class ModelKind { probit, logistic, hetero_gaussian };

// Prior and noise hyperparameters: lambda is the l1 penalty on coefficients,
// theta the Gaussian precision scale on the intercept, gamma the Laplace noise
// rate (heteroskedastic model only).
struct HyperParams {
    double lambda = 1.0;
    double theta = 1.0;
    std::optional<double> gamma;
};

struct Dataset {
    ModelKind kind = ModelKind::probit;
    Eigen::VectorXd y;
    DesignMatrix design;
    HyperParams hyper;

    int n() const { return design.n(); }
    int p() const { return design.p(); }

    double gamma() const {
        if (!hyper.gamma) {
            throw ParameterError("Dataset: gamma required for the heteroskedastic model");
        }
        return *hyper.gamma;
    }

    void validate() const {
        design.validate();
        if (y.size() != design.n()) {
            throw ParameterError("Dataset: response length must match design rows");
        }
        if (!y.allFinite()) {
            throw ParameterError("Dataset: responses must be finite");
        }
        if (!(hyper.lambda > 0.0) || !std::isfinite(hyper.lambda)) {
            throw ParameterError("Dataset: lambda must be positive and finite");
        }
        if (!(hyper.theta > 0.0) || !std::isfinite(hyper.theta)) {
            throw ParameterError("Dataset: theta must be positive and finite");
        }
        if (kind == ModelKind::probit || kind == ModelKind::logistic) {
            for (int i = 0; i < y.size(); ++i) {
                if (y[i] != 0.0 && y[i] != 1.0) {
                    throw ParameterError("Dataset: binary responses must be exactly 0 or 1");
                }
            }
        }
        if (kind == ModelKind::hetero_gaussian) {
            if (!hyper.gamma || !(*hyper.gamma > 0.0) || !std::isfinite(*hyper.gamma)) {
                throw ParameterError("Dataset: gamma must be present, positive, finite");
            }
        }
    }
};

// One latent value per observation: truncated-normal draws for probit,
// Polya-Gamma weights for logistic, inverse-Gaussian precisions for the
// heteroskedastic model.
struct LatentVector {
    Eigen::VectorXd z;
};

// Constants (ell0, eta, L, logC) certifying l(alpha, beta) <= ell0 +
// eta' (alpha, lambda beta) + (L/2) |(alpha, lambda beta)|^2 - logC for the
// negative log-likelihood in the rescaled coordinates.
struct SmoothnessCertificate {
    double ell0 = 0.0;
    Eigen::VectorXd eta;
    double l = 0.0;
    double log_c = 0.0;
};

// Linear predictors clamp here before probit log-CDF evaluation; Phi is
// subnormal beyond this range.
inline constexpr double kProbitSaturation = 38.0;

inline double neg_log_likelihood(const Dataset& data, double alpha, const Eigen::VectorXd& beta) {
    if (beta.size() != data.p()) {
        throw ParameterError("neg_log_likelihood: coefficient length must match design");
    }
    const Eigen::VectorXd s =
        (alpha + (data.design.rows.rightCols(data.p()) * beta).array()).matrix();
    double out = 0.0;
    switch (data.kind) {
        case ModelKind::probit: {
            for (int i = 0; i < data.n(); ++i) {
                double si = std::clamp(s[i], -kProbitSaturation, kProbitSaturation);
                out -= log_normal_cdf(data.y[i] == 1.0 ? si : -si);
            }
            break;
        }
        case ModelKind::logistic: {
            for (int i = 0; i < data.n(); ++i) {
                out += log1pexp(s[i]) - data.y[i] * s[i];
            }
            break;
        }
        case ModelKind::hetero_gaussian: {
            const double g = data.gamma();
            out = -data.n() * std::log(0.5 * g);
            for (int i = 0; i < data.n(); ++i) {
                out += g * std::abs(data.y[i] - s[i]);
            }
            break;
        }
    }
    return out;
}

inline LatentVector draw_latent(const Dataset& data, double alpha, const Eigen::VectorXd& beta,
                                RandomStream& rng) {
    if (beta.size() != data.p()) {
        throw ParameterError("draw_latent: coefficient length must match design");
    }
    const Eigen::VectorXd s =
        (alpha + (data.design.rows.rightCols(data.p()) * beta).array()).matrix();
    LatentVector out;
    out.z.resize(data.n());
    switch (data.kind) {
        case ModelKind::probit: {
            for (int i = 0; i < data.n(); ++i) {
                TruncatedNormalParams tn;
                tn.mean = s[i];
                tn.side = data.y[i] == 1.0 ? TruncatedNormalParams::Side::nonnegative
                                           : TruncatedNormalParams::Side::negative;
                out.z[i] = sample_truncated_normal(tn, rng);
            }
            break;
        }
        case ModelKind::logistic: {
            for (int i = 0; i < data.n(); ++i) {
                out.z[i] = sample_polya_gamma_1(std::abs(s[i]), rng);
            }
            break;
        }
        case ModelKind::hetero_gaussian: {
            const double g = data.gamma();
            for (int i = 0; i < data.n(); ++i) {
                out.z[i] = sample_inv_gaussian(InvGaussianParams::from_drift(data.y[i] - s[i], g), rng);
            }
            break;
        }
    }
    return out;
}

// Gaussian full conditional of (alpha, beta) given the latent vector and the
// coefficient precisions xi: precision X' W X + diag(theta^2, xi), linear term
// X' z (probit), X' (y - 1/2) (logistic), or X' W y (heteroskedastic), with
// W = I or diag(z).
inline PrecisionGaussian conditional_gaussian(const Dataset& data, const LatentVector& latent,
                                              const Eigen::VectorXd& xi) {
    const int n = data.n();
    const int p = data.p();
    if (latent.z.size() != n) {
        throw ParameterError("conditional_gaussian: latent length must match observations");
    }
    if (xi.size() != p) {
        throw ParameterError("conditional_gaussian: xi length must match coefficients");
    }
    for (int j = 0; j < p; ++j) {
        if (!(xi[j] > 0.0) || !std::isfinite(xi[j])) {
            throw ParameterError("conditional_gaussian: xi entries must be positive and finite");
        }
    }
    const Eigen::MatrixXd& x = data.design.rows;
    PrecisionGaussian g;
    switch (data.kind) {
        case ModelKind::probit:
            g.precision = x.transpose() * x;
            g.linear_term = x.transpose() * latent.z;
            break;
        case ModelKind::logistic:
            g.precision = x.transpose() * latent.z.asDiagonal() * x;
            g.linear_term = x.transpose() * (data.y.array() - 0.5).matrix();
            break;
        case ModelKind::hetero_gaussian:
            g.precision = x.transpose() * latent.z.asDiagonal() * x;
            g.linear_term = x.transpose() * latent.z.asDiagonal() * data.y;
            break;
    }
    if (data.kind != ModelKind::probit) {
        for (int i = 0; i < n; ++i) {
            if (!(latent.z[i] > 0.0) || !std::isfinite(latent.z[i])) {
                throw ParameterError("conditional_gaussian: latent weights must be positive and finite");
            }
        }
    }
    g.precision(0, 0) += data.hyper.theta * data.hyper.theta;
    for (int j = 0; j < p; ++j) {
        g.precision(j + 1, j + 1) += xi[j];
    }
    return g;
}

// Quadratic majorization of the negative log-likelihood in the rescaled
// coordinates v = (alpha, lambda beta): l(v) <= ell0 + eta'v + (L/2)||v||^2
// - log_c, with L tied to the top eigenvalue of the scaled Gram matrix.
inline SmoothnessCertificate smoothness_certificate(const Dataset& data) {
    data.validate();
    const ScaledDesign scaled = build_scaled_design(data.design, data.hyper.lambda);
    const double sigma = sigma_max(scaled.rows.transpose() * scaled.rows);
    const int n = data.n();
    SmoothnessCertificate cert;
    cert.eta = Eigen::VectorXd::Zero(1 + data.p());
    switch (data.kind) {
        case ModelKind::probit: {
            cert.ell0 = n * std::log(2.0);
            cert.l = sigma;
            cert.log_c = 0.0;
            const double slope = std::sqrt(2.0 / constants::pi);
            for (int i = 0; i < n; ++i) {
                cert.eta -= slope * (2.0 * data.y[i] - 1.0) * scaled.rows.row(i).transpose();
            }
            break;
        }
        case ModelKind::logistic: {
            cert.ell0 = n * std::log(2.0);
            cert.l = 0.25 * sigma;
            cert.log_c = 0.0;
            for (int i = 0; i < n; ++i) {
                cert.eta -= 0.5 * (2.0 * data.y[i] - 1.0) * scaled.rows.row(i).transpose();
            }
            break;
        }
        case ModelKind::hetero_gaussian: {
            const double g = data.gamma();
            cert.ell0 = -n * std::log(0.5 * g) + g * (data.y.cwiseAbs().sum() + 0.5 * n);
            cert.l = g * sigma;
            cert.log_c = n * std::log(0.5 * g);
            break;
        }
    }
    return cert;
}

}  // namespace lassoda
