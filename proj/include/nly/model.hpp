#pragma once

#include "nly/types.hpp"

namespace nly {

// Dirichlet concentration matrix for the confusion prior: diagonal entries
// get alpha_c1, off-diagonal entries alpha_c0.
MatrixXd make_beta(double alpha_c0, double alpha_c1, int num_classes);

// a(m) = <row m of weights, x>
VectorXd class_logits(const MatrixXd& weights, const VectorXd& x);

// Max-shifted stable softmax; output sums to 1 within kSimplexTol.
VectorXd softmax(const VectorXd& logits);

// Max-shifted log(sum(exp(a))). Returns -inf on an all -inf input.
double logsumexp(const VectorXd& a);

// Membership-averaged eta vector of one group: mean of eta[group] rows.
VectorXd expected_group_dist(const VariationalParams& varparams, int group);

// log p(W | alpha_w) under independent N(0, alpha_w^{-1} I) rows.
double log_prior_weights(const MatrixXd& weights, double alpha_w);

// Sum of row-wise Dirichlet log densities, log-Gamma normalizers included.
// Returns -inf when some c_ml = 0 while beta_ml > 1.
double log_prior_confusion(const MatrixXd& confusion, const MatrixXd& beta);

// The variational lower bound, split by factor. The observation term uses
// the plug-in form -(alpha_s/2) sum_i ||s_i - E[t_i]||^2 plus the Gaussian
// normalizer; constants are kept so the bound is comparable with
// exact_log_marginal.
struct ElboTerms {
    double obs = 0.0;               // E_q[log p(S | T, alpha_s)], plug-in
    double channel = 0.0;           // E_q[log p(T | Y, C)]
    double labels = 0.0;            // E_q[log p(Y | W, X)]
    double entropy_labels = 0.0;    // H[q(Y)]
    double entropy_channel = 0.0;   // H[q(T)]
    double prior_weights = 0.0;     // log p(W | alpha_w)
    double prior_confusion = 0.0;   // log p(C | beta)

    double total() const;
    // Name of the first non-finite term, or nullptr when all are finite.
    const char* nonfinite_term() const;
};

ElboTerms elbo_terms(const ModelParams& params, const VariationalParams& varparams,
                     const Dataset& dataset, const Hyperparams& hyper);

double elbo(const ModelParams& params, const VariationalParams& varparams,
            const Dataset& dataset, const Hyperparams& hyper);

// ln sum_{T,Y} p(S|T, alpha_s) p(T|Y, C) p(Y|W, X) by exhaustive enumeration
// (data term only, no parameter priors). Rejects instances where
// M^(U + sum_i |G_i|) exceeds 10^6.
double exact_log_marginal(const ModelParams& params, const Dataset& dataset,
                          const Hyperparams& hyper);

}  // namespace nly
