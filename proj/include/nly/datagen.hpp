#pragma once

#include "nly/rng.hpp"
#include "nly/types.hpp"

#include <cstdint>
#include <utility>

namespace nly {

struct GenConfig {
    int num_instances = 100;   // U
    int num_groups = 1000;     // N
    int group_size = 30;
    int num_classes = 4;       // M
    int feature_dim = 10;      // D
    Hyperparams hyper;
    std::uint64_t seed = 1;
    // Clip generated noisy distributions to >= 0 and renormalize. Off by
    // default: the model does not require simplex-valid observations.
    bool clamp_simplex = false;

    void validate() const;
};

// Everything the generator knew and inference must not see.
struct SyntheticTruth {
    MatrixXd true_weights;                      // M x D
    MatrixXd true_confusion;                    // M x M
    std::vector<int> true_labels;               // U, 0-based
    MatrixXd true_group_dists;                  // N x M, empirical label counts / |G_i|
    std::vector<std::vector<int>> group_dep_labels;  // aligned with Dataset::groups
};

// Runs the generative process: W rows ~ N(0, alpha_w^{-1} I), C rows ~
// Dir(beta_m), x_u ~ N(0, I), y_u ~ Cat(softmax(W x_u)), each group =
// group_size distinct instances by partial Fisher-Yates, t_iu ~ Cat(c_{y_u}),
// s_i ~ N(mean of vec(t_iu), alpha_s^{-1} I). Deterministic given the seed.
std::pair<Dataset, SyntheticTruth> generate(const GenConfig& config);

}  // namespace nly
