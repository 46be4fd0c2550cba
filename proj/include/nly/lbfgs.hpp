#pragma once

#include <Eigen/Dense>
#include <functional>

namespace nly {

// Limited-memory BFGS minimizer with strong-Wolfe line search.

struct LbfgsConfig {
    int max_iters = 100;
    double grad_tol = 1e-6;  // stop when ||grad||_2 < grad_tol
    int memory = 10;
    int max_line_search = 40;
    double wolfe_c1 = 1e-4;
    double wolfe_c2 = 0.9;
};

struct LbfgsReport {
    int iters = 0;
    bool converged = false;          // gradient tolerance reached
    bool line_search_failed = false; // a line search could not make progress
    double final_value = 0.0;
    double final_grad_norm = 0.0;
};

// Objective: fills grad and returns f(x).
using LbfgsObjective = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

LbfgsReport lbfgs_minimize(const LbfgsObjective& fn, Eigen::VectorXd& x,
                           const LbfgsConfig& config);

}  // namespace nly
