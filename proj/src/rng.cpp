#include "nly/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace nly {

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    // 1 - uniform() lies in (0, 1], so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_normal_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

double Rng::gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("Rng::gamma: shape must be positive");
    if (shape < 1.0) {
        const double u = uniform();
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    const std::uint64_t threshold = -n % n;  // 2^64 mod n
    for (;;) {
        const std::uint64_t x = engine_();
        if (x >= threshold) return x % n;
    }
}

Eigen::VectorXd sample_dirichlet(const Eigen::VectorXd& concentration, Rng& rng) {
    if ((concentration.array() <= 0.0).any())
        throw std::invalid_argument("sample_dirichlet: concentrations must be positive");
    Eigen::VectorXd draw(concentration.size());
    for (Eigen::Index m = 0; m < concentration.size(); ++m) draw[m] = rng.gamma(concentration[m]);
    const double sum = draw.sum();
    if (sum <= 0.0) {
        // All gammas underflowed (extremely small concentrations); fall back
        // to a vertex chosen by the largest draw.
        Eigen::Index at;
        draw.maxCoeff(&at);
        draw.setZero();
        draw[at] = 1.0;
        return draw;
    }
    return draw / sum;
}

int sample_categorical(const Eigen::VectorXd& p, Rng& rng) {
    if ((p.array() < 0.0).any() || std::abs(p.sum() - 1.0) > 1e-9)
        throw std::invalid_argument("sample_categorical: p must lie on the simplex");
    const double u = rng.uniform();
    double cum = 0.0;
    for (Eigen::Index m = 0; m < p.size(); ++m) {
        cum += p[m];
        if (u < cum) return static_cast<int>(m);
    }
    return static_cast<int>(p.size() - 1);  // guard against rounding at u ~= 1
}

}  // namespace nly
