#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace nly {

// Seedable RNG with explicitly implemented samplers so the whole sampling
// path is documented: mt19937_64 engine, 53-bit uniform, Box-Muller normal,
// Marsaglia-Tsang gamma, inverse-CDF categorical. Same seed, same stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform double in [0, 1), 53 random bits.
    double uniform();

    // Standard normal via Box-Muller; the paired deviate is cached.
    double normal();

    // Gamma(shape, 1) via Marsaglia-Tsang; shapes in (0, 1) are boosted
    // through Gamma(shape + 1).
    double gamma(double shape);

    // Uniform integer in [0, n) by rejection (no modulo bias).
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

// Gamma-normalization Dirichlet draw; all concentrations must be positive.
Eigen::VectorXd sample_dirichlet(const Eigen::VectorXd& concentration, Rng& rng);

// Inverse-CDF draw from a simplex vector; returns a 0-based class index.
int sample_categorical(const Eigen::VectorXd& p, Rng& rng);

}  // namespace nly
