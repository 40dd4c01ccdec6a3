#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "lassoda/error.hpp"
#include "lassoda/random.hpp"

namespace lassoda {

// n x (1+p) design with an explicit all-ones intercept column in column 0.
struct DesignMatrix {
    Eigen::MatrixXd rows;

    int n() const { return static_cast<int>(rows.rows()); }
    int p() const { return static_cast<int>(rows.cols()) - 1; }

    // Prepends the intercept column to an n x p covariate block.
    static DesignMatrix from_covariates(const Eigen::MatrixXd& x) {
        if (x.rows() < 1 || x.cols() < 1) {
            throw ParameterError("DesignMatrix: need n >= 1 and p >= 1");
        }
        DesignMatrix d;
        d.rows.resize(x.rows(), x.cols() + 1);
        d.rows.col(0).setOnes();
        d.rows.rightCols(x.cols()) = x;
        return d;
    }

    void validate() const {
        if (rows.rows() < 1 || rows.cols() < 2) {
            throw ParameterError("DesignMatrix: need n >= 1 and p >= 1");
        }
        for (int i = 0; i < rows.rows(); ++i) {
            if (rows(i, 0) != 1.0) {
                throw ParameterError("DesignMatrix: intercept column must be all ones");
            }
        }
        if (!rows.allFinite()) {
            throw ParameterError("DesignMatrix: entries must be finite");
        }
    }
};

// Design with covariate columns divided by the penalty level: row i is
// (1, x_i / lambda). All spectral quantities downstream refer to this matrix.
struct ScaledDesign {
    Eigen::MatrixXd rows;
    double lambda = 1.0;
};

inline ScaledDesign build_scaled_design(const DesignMatrix& design, double lambda) {
    design.validate();
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ParameterError("build_scaled_design: lambda must be positive and finite");
    }
    ScaledDesign s;
    s.lambda = lambda;
    s.rows = design.rows;
    s.rows.rightCols(design.p()) /= lambda;
    return s;
}

// Gaussian stored in precision form: precision matrix P and linear term b,
// mean solves P m = b.
struct PrecisionGaussian {
    Eigen::MatrixXd precision;
    Eigen::VectorXd linear_term;
};

namespace detail {

inline bool relatively_symmetric(const Eigen::MatrixXd& m, double tol) {
    double scale = m.cwiseAbs().maxCoeff();
    if (scale == 0.0) return true;
    double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    return asym <= tol * scale;
}

// One power-iteration run; returns the Rayleigh quotient at convergence or NaN
// on stagnation. `v` must be nonzero.
inline double power_iterate(const Eigen::MatrixXd& s, Eigen::VectorXd v, double rel_tol,
                            int max_iters) {
    v /= v.norm();
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int it = 0; it < max_iters; ++it) {
        Eigen::VectorXd w = s * v;
        double norm = w.norm();
        if (norm == 0.0) return 0.0;  // v sits in the kernel
        double lam = v.dot(w);
        if (std::isfinite(prev) && std::abs(lam - prev) <= rel_tol * std::max(std::abs(lam), 1e-300)) {
            return lam;
        }
        prev = lam;
        v = w / norm;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace detail

// Largest eigenvalue of a symmetric PSD matrix by power iteration. Runs from
// the normalized all-ones vector and from a fixed-seed random vector (the
// all-ones start can be an exact non-dominant eigenvector), takes the larger
// Rayleigh quotient, and retries with fresh random restarts on stagnation.
inline double sigma_max(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw ParameterError("sigma_max: matrix must be square and nonempty");
    }
    if (!detail::relatively_symmetric(m, 1e-10)) {
        throw ParameterError("sigma_max: matrix must be symmetric to 1e-10 relative");
    }
    const Eigen::MatrixXd s = 0.5 * (m + m.transpose());
    const int d = static_cast<int>(s.rows());
    const double rel_tol = 1e-10;
    const int max_iters = 100000;

    RandomStream restarts(0x5eedu);
    auto random_vector = [&]() {
        Eigen::VectorXd v(d);
        for (int i = 0; i < d; ++i) v[i] = restarts.normal();
        if (v.norm() == 0.0) v.setOnes();
        return v;
    };

    double best = -std::numeric_limits<double>::infinity();
    double run = detail::power_iterate(s, Eigen::VectorXd::Ones(d), rel_tol, max_iters);
    if (std::isfinite(run)) best = run;
    for (int attempt = 0; attempt < 8; ++attempt) {
        run = detail::power_iterate(s, random_vector(), rel_tol, max_iters);
        if (std::isfinite(run)) {
            if (run <= best + rel_tol * std::max(std::abs(best), 1.0)) {
                return std::max(best, run);
            }
            best = std::max(best, run);
        }
    }
    if (!std::isfinite(best)) {
        throw NumericError("sigma_max: power iteration failed to converge");
    }
    return best;
}

// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
// Throws NumericError carrying the minimum diagonal pivot when the matrix is
// not numerically positive definite.
inline Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    double min_pivot = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
        double d = a(j, j);
        for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        min_pivot = std::min(min_pivot, d);
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw NumericError("cholesky_lower: matrix not positive definite", min_pivot);
        }
        l(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

// Draw from N(P^{-1} b, P^{-1}) given the precision form. Factorizes
// P = L L^T, solves for the mean, and returns mean + L^{-T} u with u standard
// normal.
inline Eigen::VectorXd sample_precision_gaussian(const PrecisionGaussian& g, RandomStream& rng) {
    const int d = static_cast<int>(g.precision.rows());
    if (g.precision.cols() != d || g.linear_term.size() != d) {
        throw ParameterError("sample_precision_gaussian: dimension mismatch");
    }
    if (!g.precision.allFinite() || !g.linear_term.allFinite()) {
        throw NumericError("sample_precision_gaussian: non-finite precision or linear term");
    }
    if (!detail::relatively_symmetric(g.precision, 1e-10)) {
        throw ParameterError("sample_precision_gaussian: precision must be symmetric to 1e-10");
    }
    Eigen::MatrixXd sym = 0.5 * (g.precision + g.precision.transpose());
    Eigen::MatrixXd l = cholesky_lower(sym);

    Eigen::VectorXd mean =
        l.transpose().triangularView<Eigen::Upper>().solve(
            l.triangularView<Eigen::Lower>().solve(g.linear_term));

    Eigen::VectorXd u(d);
    for (int i = 0; i < d; ++i) u[i] = rng.normal();
    Eigen::VectorXd tail = l.transpose().triangularView<Eigen::Upper>().solve(u);
    return mean + tail;
}

}  // namespace lassoda
