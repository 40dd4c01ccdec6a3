#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "lassoda/error.hpp"
#include "lassoda/model.hpp"
#include "lassoda/random.hpp"

namespace lassoda {

// Negative log posterior up to the normalizing constant: the negative
// log-likelihood plus theta^2 alpha^2 / 2 + lambda ||beta||_1.
inline double penalized_objective(const Dataset& data, double alpha, const Eigen::VectorXd& beta) {
    const double theta = data.hyper.theta;
    return neg_log_likelihood(data, alpha, beta) + 0.5 * theta * theta * alpha * alpha +
           data.hyper.lambda * beta.cwiseAbs().sum();
}

namespace detail {

// Bracket a 1-d convex slice downhill from t0, then golden-section to `tol`.
template <class F>
double minimize_scalar(F&& f, double t0, double tol) {
    double step = 1.0;
    double lo = t0 - step;
    double mid = t0;
    double hi = t0 + step;
    double flo = f(lo);
    double fmid = f(mid);
    double fhi = f(hi);
    for (int round = 0; round < 200 && !(fmid <= flo && fmid <= fhi); ++round) {
        step *= 2.0;
        if (flo < fhi) {
            hi = mid; fhi = fmid;
            mid = lo; fmid = flo;
            lo = mid - step;
            flo = f(lo);
        } else {
            lo = mid; flo = fmid;
            mid = hi; fmid = fhi;
            hi = mid + step;
            fhi = f(hi);
        }
    }
    const double invphi = 0.6180339887498949;
    double a = lo;
    double b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1; f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2; f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace detail

// Minimizer of the penalized objective by cyclic coordinate descent with
// exact 1-d line searches (the objective is convex in each coordinate).
inline std::pair<double, Eigen::VectorXd> lasso_optimum(const Dataset& data) {
    data.validate();
    double alpha = 0.0;
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(data.p());
    const double tol = 1e-10;
    for (int sweep = 0; sweep < 200; ++sweep) {
        double moved = 0.0;
        double next_alpha = detail::minimize_scalar(
            [&](double a) { return penalized_objective(data, a, beta); }, alpha, tol);
        moved = std::max(moved, std::abs(next_alpha - alpha));
        alpha = next_alpha;
        for (int j = 0; j < data.p(); ++j) {
            Eigen::VectorXd trial = beta;
            double next = detail::minimize_scalar(
                [&](double b) {
                    trial[j] = b;
                    return penalized_objective(data, alpha, trial);
                },
                beta[j], tol);
            moved = std::max(moved, std::abs(next - beta[j]));
            beta[j] = next;
        }
        if (moved < tol) break;
    }
    return {alpha, beta};
}

// Deterministic 2-d quadrature reference for p = 1 posteriors: normalized
// log-density and trapezoid cell masses on a uniform grid whose bounds grow
// outward from the penalized optimum until every boundary density falls below
// peak * 1e-12.
struct OracleGrid {
    double alpha_lo = 0.0, alpha_hi = 0.0;
    double beta_lo = 0.0, beta_hi = 0.0;
    int resolution = 0;
    Eigen::VectorXd alpha_nodes;
    Eigen::VectorXd beta_nodes;
    Eigen::MatrixXd log_density;  // normalized, row i = alpha node, col j = beta node
    Eigen::MatrixXd cell_mass;    // sums to 1

    Eigen::VectorXd alpha_marginal() const { return cell_mass.rowwise().sum(); }
    Eigen::VectorXd beta_marginal() const { return cell_mass.colwise().sum().transpose(); }

    double alpha_mean() const { return alpha_nodes.dot(alpha_marginal()); }
    double beta_mean() const { return beta_nodes.dot(beta_marginal()); }
};

inline OracleGrid quadrature_oracle(const Dataset& data, int resolution = 400) {
    data.validate();
    if (data.p() != 1) {
        throw ParameterError("quadrature_oracle: only p = 1 posteriors are supported");
    }
    if (data.n() > 100) {
        throw ParameterError("quadrature_oracle: n must be <= 100");
    }
    if (resolution < 16) {
        throw ParameterError("quadrature_oracle: resolution must be >= 16");
    }

    auto [a_star, b_star_vec] = lasso_optimum(data);
    const double b_star = b_star_vec[0];
    Eigen::VectorXd beta1(1);
    auto objective = [&](double a, double b) {
        beta1[0] = b;
        return penalized_objective(data, a, beta1);
    };
    const double peak_obj = objective(a_star, b_star);
    const double log_drop = std::log(1e12);  // required boundary-to-peak density gap

    double left = 1.0, right = 1.0, down = 1.0, up = 1.0;
    const int probes = 65;
    bool bounded = false;
    for (int round = 0; round < 64 && !bounded; ++round) {
        const double a_lo = a_star - left, a_hi = a_star + right;
        const double b_lo = b_star - down, b_hi = b_star + up;
        auto edge_ok = [&](bool vertical, double fixed) {
            for (int k = 0; k < probes; ++k) {
                double t = static_cast<double>(k) / (probes - 1);
                double a = vertical ? fixed : a_lo + t * (a_hi - a_lo);
                double b = vertical ? b_lo + t * (b_hi - b_lo) : fixed;
                if (objective(a, b) - peak_obj < log_drop) return false;
            }
            return true;
        };
        bounded = true;
        if (!edge_ok(true, a_lo)) { left *= 2.0; bounded = false; }
        if (!edge_ok(true, a_hi)) { right *= 2.0; bounded = false; }
        if (!edge_ok(false, b_lo)) { down *= 2.0; bounded = false; }
        if (!edge_ok(false, b_hi)) { up *= 2.0; bounded = false; }
    }
    if (!bounded) {
        throw ParameterError(
            "quadrature_oracle: could not bound the posterior mass; the density decays too "
            "slowly along some direction, widen the grid manually");
    }

    OracleGrid grid;
    grid.resolution = resolution;
    grid.alpha_lo = a_star - left;
    grid.alpha_hi = a_star + right;
    grid.beta_lo = b_star - down;
    grid.beta_hi = b_star + up;
    grid.alpha_nodes.resize(resolution);
    grid.beta_nodes.resize(resolution);
    const double da = (grid.alpha_hi - grid.alpha_lo) / (resolution - 1);
    const double db = (grid.beta_hi - grid.beta_lo) / (resolution - 1);
    for (int i = 0; i < resolution; ++i) {
        grid.alpha_nodes[i] = grid.alpha_lo + i * da;
        grid.beta_nodes[i] = grid.beta_lo + i * db;
    }

    Eigen::MatrixXd raw(resolution, resolution);
    double raw_max = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
            raw(i, j) = -objective(grid.alpha_nodes[i], grid.beta_nodes[j]);
            raw_max = std::max(raw_max, raw(i, j));
        }
    }
    grid.cell_mass.resize(resolution, resolution);
    double total = 0.0;
    for (int i = 0; i < resolution; ++i) {
        const double wi = (i == 0 || i == resolution - 1) ? 0.5 : 1.0;
        for (int j = 0; j < resolution; ++j) {
            const double wj = (j == 0 || j == resolution - 1) ? 0.5 : 1.0;
            const double m = wi * wj * std::exp(raw(i, j) - raw_max) * da * db;
            grid.cell_mass(i, j) = m;
            total += m;
        }
    }
    grid.cell_mass /= total;
    grid.log_density = raw.array() - raw_max - std::log(total);
    return grid;
}

// Exact draws from the gridded posterior: inverse-CDF over the flattened cell
// masses (binary search on a precomputed cumulative) with uniform jitter
// inside the selected cell.
class GridSampler {
public:
    explicit GridSampler(const OracleGrid& grid) : grid_(grid) {
        const int r = grid.resolution;
        cdf_.resize(static_cast<std::size_t>(r) * r);
        double acc = 0.0;
        for (int k = 0; k < r * r; ++k) {
            acc += grid.cell_mass(k / r, k % r);
            cdf_[static_cast<std::size_t>(k)] = acc;
        }
        cdf_.back() = 1.0;
    }

    std::pair<double, double> operator()(RandomStream& rng) const {
        const int r = grid_.resolution;
        const double u = rng.uniform();
        auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        int cell = static_cast<int>(it - cdf_.begin());
        if (cell >= r * r) cell = r * r - 1;
        const int i = cell / r;
        const int j = cell % r;
        const double da = (grid_.alpha_hi - grid_.alpha_lo) / (r - 1);
        const double db = (grid_.beta_hi - grid_.beta_lo) / (r - 1);
        double a = grid_.alpha_nodes[i] + (rng.uniform() - 0.5) * da;
        double b = grid_.beta_nodes[j] + (rng.uniform() - 0.5) * db;
        return {a, b};
    }

private:
    const OracleGrid& grid_;
    std::vector<double> cdf_;
};

}  // namespace lassoda
