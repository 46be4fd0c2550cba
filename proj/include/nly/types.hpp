#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace nly {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Tolerance used for all row-stochastic (simplex) checks.
inline constexpr double kSimplexTol = 1e-12;

// Precision/concentration hyperparameters. alpha_c0/alpha_c1 must be >= 1 so
// the MAP confusion update keeps nonnegative numerators.
struct Hyperparams {
    double alpha_w = 1.0;    // weight-prior precision
    double alpha_s = 100.0;  // observation precision
    double alpha_c0 = 1.0;   // off-diagonal Dirichlet concentration
    double alpha_c1 = 10.0;  // diagonal Dirichlet concentration

    void validate() const;
};

// Observed data: per-instance features, group memberships and per-group noisy
// label distributions. Rows of noisy_dists are plain real vectors; they are
// not constrained to the simplex (the generative model draws them from a
// Gaussian). Class indices are 0-based, in [0, M).
struct Dataset {
    MatrixXd features;                             // U x D
    std::vector<std::vector<int>> groups;          // N sets of instance indices
    MatrixXd noisy_dists;                          // N x M
    std::optional<std::vector<int>> true_labels;   // evaluation only

    int num_instances() const { return static_cast<int>(features.rows()); }
    int feature_dim() const { return static_cast<int>(features.cols()); }
    int num_groups() const { return static_cast<int>(groups.size()); }
    int num_classes() const { return static_cast<int>(noisy_dists.cols()); }

    void validate() const;

    // Copy with true_labels removed; fitting code only ever sees this view.
    Dataset without_labels() const;
};

// Point estimates: weight matrix (row per class) and row-stochastic confusion
// matrix C, where C(m, l) is the probability class m is observed as class l.
struct ModelParams {
    MatrixXd weights;    // M x D
    MatrixXd confusion;  // M x M, rows on the simplex

    void validate() const;
};

// Variational responsibilities. zeta(u, m) is the class-m responsibility of
// instance u. eta[i] holds one row per member of group i, aligned with
// dataset.groups[i]; row k is the label distribution of the group-dependent
// label of member k.
struct VariationalParams {
    MatrixXd zeta;                // U x M
    std::vector<MatrixXd> eta;    // N matrices, |G_i| x M

    // Looks up the eta row of instance u within group i. Throws if u is not
    // a member of group i.
    Eigen::RowVectorXd eta_for(const Dataset& dataset, int group, int instance) const;

    void validate(const Dataset& dataset) const;
};

// Per-update ELBO audit collected when FitConfig::audit is set. Deltas are
// the minimum observed ELBO change immediately after the named update, over
// all sweeps (negative values mean a decrease was seen).
struct FitAudit {
    double max_simplex_violation = 0.0;
    double min_eta_delta = std::numeric_limits<double>::infinity();
    double min_zeta_delta = std::numeric_limits<double>::infinity();
    double min_confusion_delta = std::numeric_limits<double>::infinity();
    double min_weights_delta = std::numeric_limits<double>::infinity();
    bool enabled = false;
};

struct FitResult {
    ModelParams params;
    VariationalParams varparams;
    std::vector<double> elbo_trace;    // one entry per outer sweep
    std::vector<int> predicted_labels; // argmax of zeta rows, lowest index on ties
    bool converged = false;
    int sweeps = 0;
    std::vector<std::string> warnings;
    FitAudit audit;
};

// Thrown when inference hits a non-finite objective; maps to CLI exit code 4.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace nly
