#pragma once

#include "nly/datagen.hpp"
#include "nly/inference.hpp"
#include "nly/types.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace nly {

// Fraction of exact matches between two equal-length label vectors.
double accuracy(const std::vector<int>& predicted, const std::vector<int>& truth);

// --- cross-validation over group folds ---
//
// Folds partition groups (never instances): fold f holds out groups with
// index i such that i % folds == f. The criterion is the mean squared error
// between each held-out noisy distribution and the fitted model's predicted
// group distribution. Ties go to the earliest grid point, so grids should be
// ordered from most to least regularized.

// Predicts the noisy distribution of a group given its member indices.
using GroupPredictor = std::function<VectorXd(const std::vector<int>& members)>;

// Fits one grid point on a training split (labels already stripped, held-out
// groups removed) and returns a predictor.
using CvFitProcedure = std::function<GroupPredictor(const Dataset& train)>;

struct CvResult {
    int best_index = 0;
    std::vector<double> mean_scores;  // one per grid point
};

CvResult cross_validate(const Dataset& dataset, int folds,
                        const std::vector<CvFitProcedure>& grid);

// Grid wrappers for the three methods.
Hyperparams cv_select_model(const Dataset& dataset, const std::vector<Hyperparams>& grid,
                            const FitConfig& fit_config, int folds);
double cv_select_ridge(const Dataset& dataset, const std::vector<double>& lambdas, int folds);
std::pair<double, double> cv_select_mten(const Dataset& dataset,
                                         const std::vector<std::pair<double, double>>& grid,
                                         int folds);

// Model-side group-distribution predictor used by the CV criterion:
// s_hat = C^T * mean over members of softmax(W x_u).
VectorXd predict_group_dist(const ModelParams& params, const Dataset& dataset,
                            const std::vector<int>& members);

// --- multi-seed experiment over noise settings ---

struct Table1Config {
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    GenConfig gen;  // alpha_c1 is overridden by each setting below
    std::vector<double> alpha_c1_settings = {1.0, 10.0, 100.0};
    std::vector<std::string> methods = {"proposed", "mten", "ridge"};
    std::vector<Hyperparams> model_grid;                    // ordered most regularized first
    std::vector<double> ridge_grid;                         // descending lambda
    std::vector<std::pair<double, double>> mten_grid;       // (alpha, l1_ratio), alpha descending
    int folds = 3;
    FitConfig fit_config;      // final fits
    FitConfig cv_fit_config;   // lighter budget for CV fits
    int inductive_test_instances = 1000;
};

// Default grids and the default generation setup.
Table1Config default_table1_config();

struct RunRecord {
    std::string method;
    double alpha_c1 = 0.0;
    std::uint64_t seed = 0;
    double transductive_accuracy = 0.0;  // on the U training instances
    double inductive_accuracy = 0.0;     // on freshly drawn instances
    std::string selected_hyper;
    double wall_seconds = 0.0;
    int sweeps = 0;  // proposed model only
};

struct ExperimentReport {
    std::vector<double> alpha_c1_settings;
    std::vector<std::string> methods;
    std::vector<std::uint64_t> seeds;
    std::vector<RunRecord> runs;  // deterministic order: setting-major, then seed, then method

    double mean_accuracy(const std::string& method, double alpha_c1, bool inductive = false) const;
    double stddev_accuracy(const std::string& method, double alpha_c1, bool inductive = false) const;
};

// Generates a dataset per (setting, seed), selects hyperparameters by
// cross-validation, fits all requested methods, and scores label accuracy
// against the withheld truth. Independent runs execute in parallel, capped
// by NLY_THREADS.
ExperimentReport reproduce_table1(const Table1Config& config);

// Aligned text rendering of the per-cell means and standard deviations.
std::string render_table(const ExperimentReport& report);

// --- numerical verification suite ---

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

// Gradient checks, Jensen-bound checks, ELBO monotonicity audits and the
// supervised reduction, on seeded random instances.
VerificationReport verification_suite(std::uint64_t seed);

// Max relative error between an analytic gradient and central finite
// differences of f at x. Exposed so a broken gradient can be fed in.
double max_rel_grad_error(const std::function<double(const VectorXd&)>& f,
                          const VectorXd& analytic_grad, const VectorXd& x, double h = 1e-5);

// Parallelism cap: NLY_THREADS when set and positive, else hardware threads.
int thread_budget();

}  // namespace nly
