#pragma once

#include "nly/lbfgs.hpp"
#include "nly/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nly {

struct WOptimizerConfig {
    int steps = 100;
    double grad_tol = 1e-6;
    int memory = 10;
};

struct EtaInnerConfig {
    int max_iters = 100;
    double damping = 0.5;    // in (0, 1]
    double tol = 1e-9;       // max absolute coordinate change
};

struct FitConfig {
    int max_sweeps = 500;
    double elbo_rel_tol = 1e-7;
    WOptimizerConfig w_optimizer;
    EtaInnerConfig eta_inner;
    std::uint64_t init_seed = 0;
    bool check_gradients = false;    // run a finite-difference audit before fitting
    bool audit = false;              // record per-update ELBO deltas and simplex checks

    void validate() const;
};

// Called after every sweep with (sweep index, elbo, max parameter change).
using ProgressCallback = std::function<void(int, double, double)>;

// Coordinate-ascent sweeps of [eta, zeta, confusion, weights] until the
// relative ELBO change drops below elbo_rel_tol or max_sweeps is reached.
// Throws NumericalError (naming the offending term) if the bound goes
// non-finite.
FitResult fit(const Dataset& dataset, const Hyperparams& hyper, const FitConfig& config,
              const ProgressCallback& progress = {});

// Same, with an explicit initial zeta (U x M, rows on the simplex). eta is
// initialized from zeta rows, C from the identity-leaning default, W at zero.
FitResult fit(const Dataset& dataset, const Hyperparams& hyper, const FitConfig& config,
              const MatrixXd& zeta_init, const ProgressCallback& progress = {});

// --- individual coordinate updates (exposed for tests and the verifier) ---

// Maximizes the W-dependent bound terms by L-BFGS ascent; falls back to
// diminishing-step gradient ascent when the line search stalls (appending a
// note to *warnings). Monotone in the objective either way.
MatrixXd update_weights(const MatrixXd& weights, const MatrixXd& zeta, const Dataset& dataset,
                        double alpha_w, const WOptimizerConfig& config,
                        std::vector<std::string>* warnings = nullptr);

// Closed-form MAP update: c_ml proportional to (sum over membership pairs of
// zeta_um * eta_iul) + beta_ml - 1. An all-zero row falls back to uniform.
MatrixXd update_confusion(const MatrixXd& zeta, const std::vector<MatrixXd>& eta,
                          const Dataset& dataset, const MatrixXd& beta);

// Closed-form zeta rows: softmax over a_um + sum over memberships of
// sum_l eta_iul * log c_ml.
MatrixXd update_zeta(const MatrixXd& weights, const MatrixXd& confusion,
                     const std::vector<MatrixXd>& eta, const Dataset& dataset,
                     std::vector<std::string>* warnings = nullptr);

// Damped fixed-point update of one group's eta block. s_i is the group's
// observed distribution, psi(k, m) = sum_l zeta(u_k, l) log c_lm for member
// k. Keeps the best-objective iterate, so the group objective never drops
// below its value at eta_init. Sets *hit_max when the iteration cap was hit.
MatrixXd update_eta_group(const VectorXd& s_i, const MatrixXd& eta_init, const MatrixXd& psi,
                          double alpha_s, const EtaInnerConfig& config,
                          bool* hit_max = nullptr);

// All groups; psi matrices are built internally from zeta and confusion.
std::vector<MatrixXd> update_eta(const MatrixXd& zeta, const MatrixXd& confusion,
                                 const Dataset& dataset, double alpha_s,
                                 const EtaInnerConfig& config,
                                 const std::vector<MatrixXd>& eta,
                                 std::vector<std::string>* warnings = nullptr);

// The group-local objective maximized by update_eta_group (observation term
// of group i, channel term, and eta entropy).
double eta_group_objective(const VectorXd& s_i, const MatrixXd& eta_i, const MatrixXd& psi,
                           double alpha_s);

// log-evidence coefficients psi for one group: psi = Z_G * log(C)^T rows.
MatrixXd eta_log_evidence(const MatrixXd& zeta, const MatrixXd& confusion,
                          const std::vector<int>& members);

// --- analytic gradients of the implemented bound (used by the updates and
// --- checked against finite differences) ---

// d elbo / d W: (zeta - softmax(a))^T X - alpha_w W, as an M x D matrix.
MatrixXd elbo_grad_weights(const MatrixXd& weights, const MatrixXd& zeta,
                           const Dataset& dataset, double alpha_w);

// d elbo / d eta for one group's block, |G_i| x M: the stationarity gradient
// (alpha_s/|G_i|)(s_im - E[t_i]_m) + psi - log eta - 1.
MatrixXd elbo_grad_eta_group(const VectorXd& s_i, const MatrixXd& eta_i, const MatrixXd& psi,
                             double alpha_s);

// argmax_m softmax(W x)_m with lowest-index tie-breaking.
int predict(const ModelParams& params, const VectorXd& x);

}  // namespace nly
