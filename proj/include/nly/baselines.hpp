#pragma once

#include "nly/types.hpp"

namespace nly {

// One row per (group, member) pair: the member's features against the
// group's noisy distribution, in group-major order.
struct RegressionPairs {
    MatrixXd inputs;   // sum_i |G_i| x D
    MatrixXd targets;  // sum_i |G_i| x M

    int count() const { return static_cast<int>(inputs.rows()); }
};

struct LinearModel {
    MatrixXd coef;        // M x D
    VectorXd intercept;   // M
};

RegressionPairs build_pairs(const Dataset& dataset);

// Per-output-dimension ridge on centered data, unpenalized intercept.
// Solves (X^T X + lambda I) w = X^T y; lambda = 0 requires full column rank.
LinearModel ridge_fit(const RegressionPairs& pairs, double lambda);

struct MtenConfig {
    int max_sweeps = 1000;
    double tol = 1e-8;  // max coefficient block change per sweep
};

struct MtenResult {
    LinearModel model;
    bool converged = false;
    int sweeps = 0;
};

// Multi-task elastic net: minimizes
//   (1/(2n)) ||Y - X W^T - 1 b^T||_F^2
//   + alpha * l1_ratio * sum_d ||W(:, d)||_2
//   + (alpha * (1 - l1_ratio) / 2) * ||W||_F^2
// by cyclic block coordinate descent with the group soft-threshold step.
MtenResult mten_fit(const RegressionPairs& pairs, double alpha, double l1_ratio,
                    const MtenConfig& config = {});

// The MTEN objective above, for tests and convergence monitoring.
double mten_objective(const RegressionPairs& pairs, const LinearModel& model,
                      double alpha, double l1_ratio);

// Smallest alpha at which every coefficient column is zero (l1_ratio > 0).
double mten_alpha_max(const RegressionPairs& pairs, double l1_ratio);

// argmax of coef x + intercept, lowest index on ties.
int regress_predict_label(const LinearModel& model, const VectorXd& x);

}  // namespace nly
