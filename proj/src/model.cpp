#include "nly/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nly {

namespace {

constexpr double kLogFloor = 1e-300;
const double kLog2Pi = std::log(2.0 * M_PI);
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// 0 * log 0 = 0 convention, with the log floored away from zero.
inline double xlogx(double x) {
    return x > 0.0 ? x * std::log(std::max(x, kLogFloor)) : 0.0;
}

inline double safe_log(double x) { return std::log(std::max(x, kLogFloor)); }

}  // namespace

void Hyperparams::validate() const {
    if (!(alpha_w > 0.0) || !(alpha_s > 0.0) || !(alpha_c0 > 0.0) || !(alpha_c1 > 0.0))
        throw std::invalid_argument("Hyperparams: all four values must be strictly positive");
    if (alpha_c0 < 1.0 || alpha_c1 < 1.0)
        throw std::invalid_argument("Hyperparams: alpha_c0 and alpha_c1 must be >= 1");
}

void Dataset::validate() const {
    const int u_count = num_instances();
    const int m = num_classes();
    if (u_count == 0 || feature_dim() == 0)
        throw std::invalid_argument("Dataset: features must be non-empty");
    if (noisy_dists.rows() != static_cast<Eigen::Index>(groups.size()))
        throw std::invalid_argument("Dataset: noisy_dists must have one row per group");
    if (m < 2) throw std::invalid_argument("Dataset: at least two classes required");
    if (!features.allFinite() || !noisy_dists.allFinite())
        throw std::invalid_argument("Dataset: non-finite values");
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const auto& g = groups[i];
        if (g.empty()) throw std::invalid_argument("Dataset: group " + std::to_string(i) + " is empty");
        std::vector<int> sorted(g);
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("Dataset: group " + std::to_string(i) + " has duplicate members");
        if (sorted.front() < 0 || sorted.back() >= u_count)
            throw std::invalid_argument("Dataset: group " + std::to_string(i) + " has out-of-range members");
    }
    if (true_labels) {
        if (static_cast<int>(true_labels->size()) != u_count)
            throw std::invalid_argument("Dataset: true_labels length mismatch");
        for (int y : *true_labels)
            if (y < 0 || y >= m) throw std::invalid_argument("Dataset: true label out of range");
    }
}

Dataset Dataset::without_labels() const {
    Dataset copy = *this;
    copy.true_labels.reset();
    return copy;
}

void ModelParams::validate() const {
    if (!weights.allFinite()) throw std::invalid_argument("ModelParams: non-finite weights");
    if (confusion.rows() != confusion.cols())
        throw std::invalid_argument("ModelParams: confusion must be square");
    for (Eigen::Index m = 0; m < confusion.rows(); ++m) {
        if ((confusion.row(m).array() < 0.0).any())
            throw std::invalid_argument("ModelParams: negative confusion entry");
        if (std::abs(confusion.row(m).sum() - 1.0) > kSimplexTol)
            throw std::invalid_argument("ModelParams: confusion row " + std::to_string(m) +
                                        " does not sum to 1");
    }
}

Eigen::RowVectorXd VariationalParams::eta_for(const Dataset& dataset, int group,
                                              int instance) const {
    if (group < 0 || group >= static_cast<int>(eta.size()))
        throw std::invalid_argument("VariationalParams: group index out of range");
    const auto& members = dataset.groups.at(group);
    for (std::size_t k = 0; k < members.size(); ++k)
        if (members[k] == instance) return eta[group].row(static_cast<Eigen::Index>(k));
    throw std::invalid_argument("VariationalParams: no eta entry for instance " +
                                std::to_string(instance) + " in group " + std::to_string(group));
}

void VariationalParams::validate(const Dataset& dataset) const {
    const int m = dataset.num_classes();
    if (zeta.rows() != dataset.num_instances() || zeta.cols() != m)
        throw std::invalid_argument("VariationalParams: zeta shape mismatch");
    if (static_cast<int>(eta.size()) != dataset.num_groups())
        throw std::invalid_argument("VariationalParams: one eta block per group required");
    auto check_simplex_rows = [m](const MatrixXd& rows, const std::string& what) {
        if (rows.cols() != m) throw std::invalid_argument(what + ": wrong width");
        for (Eigen::Index r = 0; r < rows.rows(); ++r) {
            if ((rows.row(r).array() < 0.0).any())
                throw std::invalid_argument(what + ": negative entry");
            if (std::abs(rows.row(r).sum() - 1.0) > kSimplexTol)
                throw std::invalid_argument(what + ": row does not sum to 1");
        }
    };
    check_simplex_rows(zeta, "zeta");
    for (std::size_t i = 0; i < eta.size(); ++i) {
        if (eta[i].rows() != static_cast<Eigen::Index>(dataset.groups[i].size()))
            throw std::invalid_argument("VariationalParams: eta block " + std::to_string(i) +
                                        " does not match group size");
        check_simplex_rows(eta[i], "eta block " + std::to_string(i));
    }
}

MatrixXd make_beta(double alpha_c0, double alpha_c1, int num_classes) {
    if (num_classes < 2) throw std::invalid_argument("make_beta: need at least two classes");
    if (alpha_c0 < 1.0 || alpha_c1 < 1.0)
        throw std::invalid_argument("make_beta: concentrations must be >= 1");
    MatrixXd beta = MatrixXd::Constant(num_classes, num_classes, alpha_c0);
    beta.diagonal().setConstant(alpha_c1);
    return beta;
}

VectorXd class_logits(const MatrixXd& weights, const VectorXd& x) {
    if (weights.cols() != x.size())
        throw std::invalid_argument("class_logits: dimension mismatch");
    return weights * x;
}

double logsumexp(const VectorXd& a) {
    const double max = a.maxCoeff();
    if (!std::isfinite(max)) return max;  // all -inf (or a stray +inf)
    double sum = 0.0;
    for (Eigen::Index m = 0; m < a.size(); ++m) sum += std::exp(a[m] - max);
    return max + std::log(sum);
}

VectorXd softmax(const VectorXd& logits) {
    const double max = logits.maxCoeff();
    VectorXd p = (logits.array() - max).exp();
    return p / p.sum();
}

VectorXd expected_group_dist(const VariationalParams& varparams, int group) {
    if (group < 0 || group >= static_cast<int>(varparams.eta.size()))
        throw std::invalid_argument("expected_group_dist: group index out of range");
    const MatrixXd& block = varparams.eta[group];
    if (block.rows() == 0)
        throw std::invalid_argument("expected_group_dist: empty eta block");
    return block.colwise().mean().transpose();
}

double log_prior_weights(const MatrixXd& weights, double alpha_w) {
    if (!(alpha_w > 0.0)) throw std::invalid_argument("log_prior_weights: nonpositive precision");
    const double m = static_cast<double>(weights.rows());
    const double d = static_cast<double>(weights.cols());
    return m * (d / 2.0) * (std::log(alpha_w) - kLog2Pi) -
           (alpha_w / 2.0) * weights.squaredNorm();
}

double log_prior_confusion(const MatrixXd& confusion, const MatrixXd& beta) {
    if (confusion.rows() != beta.rows() || confusion.cols() != beta.cols())
        throw std::invalid_argument("log_prior_confusion: shape mismatch");
    double total = 0.0;
    for (Eigen::Index m = 0; m < beta.rows(); ++m) {
        total += std::lgamma(beta.row(m).sum());
        for (Eigen::Index l = 0; l < beta.cols(); ++l) {
            const double b = beta(m, l);
            const double c = confusion(m, l);
            total -= std::lgamma(b);
            if (b != 1.0) {
                if (c <= 0.0 && b > 1.0) return kNegInf;
                total += (b - 1.0) * std::log(c);
            }
        }
    }
    return total;
}

double ElboTerms::total() const {
    return obs + channel + labels + entropy_labels + entropy_channel + prior_weights +
           prior_confusion;
}

const char* ElboTerms::nonfinite_term() const {
    if (!std::isfinite(obs)) return "observation term";
    if (!std::isfinite(channel)) return "channel term";
    if (!std::isfinite(labels)) return "label term";
    if (!std::isfinite(entropy_labels)) return "label entropy";
    if (!std::isfinite(entropy_channel)) return "channel entropy";
    if (!std::isfinite(prior_weights)) return "weight prior";
    if (!std::isfinite(prior_confusion)) return "confusion prior";
    return nullptr;
}

ElboTerms elbo_terms(const ModelParams& params, const VariationalParams& varparams,
                     const Dataset& dataset, const Hyperparams& hyper) {
    const int n = dataset.num_groups();
    const int u_count = dataset.num_instances();
    const int m_count = dataset.num_classes();
    ElboTerms terms;

    // Observation term (plug-in) and the eta-side sums, group by group.
    double obs_quad = 0.0;
    for (int i = 0; i < n; ++i) {
        const MatrixXd& block = varparams.eta[i];
        const VectorXd mean_dist = block.colwise().mean().transpose();
        obs_quad += (dataset.noisy_dists.row(i).transpose() - mean_dist).squaredNorm();

        const auto& members = dataset.groups[i];
        for (std::size_t k = 0; k < members.size(); ++k) {
            const int u = members[k];
            for (int l = 0; l < m_count; ++l) {
                const double e = block(static_cast<Eigen::Index>(k), l);
                terms.entropy_channel -= xlogx(e);
                if (e <= 0.0) continue;
                for (int m = 0; m < m_count; ++m) {
                    const double w = varparams.zeta(u, m) * e;
                    if (w > 0.0) terms.channel += w * safe_log(params.confusion(m, l));
                }
            }
        }
    }
    terms.obs = -(hyper.alpha_s / 2.0) * obs_quad +
                n * (m_count / 2.0) * (std::log(hyper.alpha_s) - kLog2Pi);

    for (int u = 0; u < u_count; ++u) {
        const VectorXd a = params.weights * dataset.features.row(u).transpose();
        const double lse = logsumexp(a);
        for (int m = 0; m < m_count; ++m) {
            terms.labels += varparams.zeta(u, m) * (a[m] - lse);
            terms.entropy_labels -= xlogx(varparams.zeta(u, m));
        }
    }

    terms.prior_weights = log_prior_weights(params.weights, hyper.alpha_w);
    const MatrixXd beta = make_beta(hyper.alpha_c0, hyper.alpha_c1, m_count);
    terms.prior_confusion = log_prior_confusion(params.confusion, beta);
    return terms;
}

double elbo(const ModelParams& params, const VariationalParams& varparams,
            const Dataset& dataset, const Hyperparams& hyper) {
    return elbo_terms(params, varparams, dataset, hyper).total();
}

namespace {

// Advances a base-M odometer; returns false after the last combination.
bool next_combo(std::vector<int>& digits, int base) {
    for (std::size_t k = 0; k < digits.size(); ++k) {
        if (++digits[k] < base) return true;
        digits[k] = 0;
    }
    return false;
}

}  // namespace

double exact_log_marginal(const ModelParams& params, const Dataset& dataset,
                          const Hyperparams& hyper) {
    const int u_count = dataset.num_instances();
    const int m_count = dataset.num_classes();
    const int n = dataset.num_groups();

    std::size_t total_vars = static_cast<std::size_t>(u_count);
    for (const auto& g : dataset.groups) total_vars += g.size();
    if (total_vars * std::log(static_cast<double>(m_count)) > std::log(1e6))
        throw std::invalid_argument("exact_log_marginal: instance too large to enumerate");

    // Per-instance class log probabilities.
    MatrixXd log_py(u_count, m_count);
    for (int u = 0; u < u_count; ++u) {
        const VectorXd a = params.weights * dataset.features.row(u).transpose();
        const double lse = logsumexp(a);
        for (int m = 0; m < m_count; ++m) log_py(u, m) = a[m] - lse;
    }

    MatrixXd log_c(m_count, m_count);
    for (int m = 0; m < m_count; ++m)
        for (int l = 0; l < m_count; ++l) log_c(m, l) = std::log(params.confusion(m, l));

    const double gauss_norm = (m_count / 2.0) * (std::log(hyper.alpha_s) - kLog2Pi);

    // For each label assignment, groups factor independently; each group sum
    // enumerates its members' channel labels.
    std::vector<int> labels(static_cast<std::size_t>(u_count), 0);
    std::vector<double> y_terms;
    do {
        double log_term = 0.0;
        for (int u = 0; u < u_count; ++u) log_term += log_py(u, labels[static_cast<std::size_t>(u)]);

        for (int i = 0; i < n && std::isfinite(log_term); ++i) {
            const auto& members = dataset.groups[i];
            const double inv_size = 1.0 / static_cast<double>(members.size());
            std::vector<int> channel(members.size(), 0);
            std::vector<double> group_terms;
            do {
                double lt = gauss_norm;
                VectorXd mean_t = VectorXd::Zero(m_count);
                for (std::size_t k = 0; k < members.size(); ++k) {
                    lt += log_c(labels[static_cast<std::size_t>(members[k])], channel[k]);
                    mean_t[channel[k]] += inv_size;
                }
                if (!std::isfinite(lt)) continue;  // zero-probability channel combo
                lt -= (hyper.alpha_s / 2.0) *
                      (dataset.noisy_dists.row(i).transpose() - mean_t).squaredNorm();
                group_terms.push_back(lt);
            } while (next_combo(channel, m_count));
            if (group_terms.empty()) {
                log_term = kNegInf;  // every channel combination had zero probability
                break;
            }
            log_term += logsumexp(Eigen::Map<const VectorXd>(
                group_terms.data(), static_cast<Eigen::Index>(group_terms.size())));
        }
        y_terms.push_back(log_term);
    } while (next_combo(labels, m_count));

    return logsumexp(
        Eigen::Map<const VectorXd>(y_terms.data(), static_cast<Eigen::Index>(y_terms.size())));
}

}  // namespace nly
