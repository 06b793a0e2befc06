// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "experiments_internal.hpp"
#include "qrp/experiments.hpp"
#include "qrp/lift.hpp"
#include "qrp/rng.hpp"

namespace qrp {

namespace {

double clamp_unit(double v) { return std::clamp(v, -1.0, 1.0); }

// Beamsplitter-with-phase block, unitary for all (theta, phi).
Eigen::Matrix2cd bs_block(double theta, double phi) {
    Eigen::Matrix2cd b;
    const std::complex<double> phase = std::exp(std::complex<double>(0.0, phi));
    b << std::cos(theta), -phase * std::sin(theta), std::conj(phase) * std::sin(theta),
        std::cos(theta);
    return b;
}

ModeUnitary dual_rail(double theta1, double phi1, double theta2, double phi2) {
    Eigen::MatrixXcd enc = Eigen::MatrixXcd::Zero(4, 4);
    enc.block<2, 2>(0, 0) = bs_block(theta1, phi1);
    enc.block<2, 2>(2, 2) = bs_block(theta2, phi2);
    return ModeUnitary{std::move(enc)};
}

ModeUnitary encode_for(const std::string& encoding, double x, double y) {
    if (encoding == "polar") {
        return encode_point_polar(x, y);
    }
    if (encoding == "cartesian") {
        return encode_point(x, y);
    }
    throw std::invalid_argument("spiral: encoding must be 'polar' or 'cartesian'");
}

const FockBasis& spiral_outcome_basis() {
    static const FockBasis basis = FockBasis::up_to(4, 2);
    return basis;
}

Eigen::MatrixXd spiral_feature_matrix(const std::vector<SpiralPoint>& points,
                                      const ModeUnitary& reservoir,
                                      const std::string& encoding) {
    const int n = static_cast<int>(points.size());
    Eigen::MatrixXd x(n, spiral_outcome_basis().size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        const ModeUnitary total{reservoir.mat * encode_for(encoding, points[i].x, points[i].y).mat};
        x.row(i) = spiral_features(total).transpose();
    }
    return x;
}

Eigen::MatrixXd classical_feature_matrix(const std::vector<SpiralPoint>& points,
                                         const ModeUnitary& reservoir,
                                         const std::string& encoding) {
    const int n = static_cast<int>(points.size());
    Eigen::MatrixXd x(n, 4);
    for (int i = 0; i < n; ++i) {
        const ModeUnitary total{reservoir.mat * encode_for(encoding, points[i].x, points[i].y).mat};
        x.row(i) = classical_features(total).transpose();
    }
    return x;
}

std::vector<int> labels_of(const std::vector<SpiralPoint>& points) {
    std::vector<int> labels(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        labels[i] = points[i].label;
    }
    return labels;
}

double accuracy(const LogisticModel& model, const Eigen::MatrixXd& features,
                const std::vector<int>& labels) {
    int correct = 0;
    for (int i = 0; i < features.rows(); ++i) {
        const int predicted = model.probability(features.row(i).transpose()) > 0.5 ? 1 : 0;
        correct += (predicted == labels[i]) ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(features.rows());
}

// Rewrites a model fitted on standardized features as an affine map on raw
// features: w'_j = w_j / s_j, b' = b - sum_j w_j mu_j / s_j.
LogisticModel fold_scaler(const LogisticModel& model, const FeatureScaler& scaler) {
    LogisticModel folded;
    folded.weights = model.weights.array() / scaler.scale.transpose().array();
    folded.bias = model.bias - folded.weights.dot(scaler.mean.transpose());
    return folded;
}

} // namespace

std::vector<SpiralPoint> spiral_dataset(int points_per_class, double noise_sd,
                                        std::uint64_t seed) {
    if (points_per_class < 1) {
        throw std::invalid_argument("spiral_dataset: points_per_class must be >= 1");
    }
    std::vector<SpiralPoint> points;
    points.reserve(2 * points_per_class);
    Rng rng(seed);
    const double span = 3.0 * M_PI;
    for (int label = 0; label < 2; ++label) {
        const double flip = (label == 0) ? 1.0 : -1.0; // arm 1 rotated by pi
        for (int i = 0; i < points_per_class; ++i) {
            const double t = span * rng.uniform();
            const double x = flip * t * std::cos(t) / span + noise_sd * rng.normal();
            const double y = flip * t * std::sin(t) / span + noise_sd * rng.normal();
            points.push_back(SpiralPoint{clamp_unit(x), clamp_unit(y), label});
        }
    }
    return points;
}

ModeUnitary encode_point(double x, double y) {
    if (x < -1.0 || x > 1.0 || y < -1.0 || y > 1.0) {
        throw std::invalid_argument("encode_point: coordinates must lie in [-1, 1]");
    }
    return dual_rail(M_PI * (x + 1.0) / 2.0, M_PI * (y + 1.0), M_PI * (y + 1.0) / 2.0,
                     M_PI * (x + 1.0));
}

ModeUnitary encode_point_polar(double x, double y) {
    if (x < -1.0 || x > 1.0 || y < -1.0 || y > 1.0) {
        throw std::invalid_argument("encode_point_polar: coordinates must lie in [-1, 1]");
    }
    const double r = std::min(1.0, std::hypot(x, y));
    const double angle = std::atan2(y, x);
    return dual_rail(M_PI * r / 2.0, angle - 3.0 * M_PI * r, M_PI * r, angle);
}

Eigen::VectorXd spiral_features(const ModeUnitary& transform) {
    const auto& basis = spiral_outcome_basis();
    const Eigen::VectorXcd psi = lift_column(transform, basis, {1, 0, 1, 0});
    return psi.cwiseAbs2();
}

Eigen::VectorXd classical_features(const ModeUnitary& transform) {
    Eigen::Vector4cd alpha;
    alpha << 1.0, 0.0, 1.0, 0.0;
    alpha /= std::sqrt(2.0);
    return (transform.mat * alpha).cwiseAbs2();
}

double LogisticModel::probability(const Eigen::VectorXd& f) const {
    if (f.size() != weights.size()) {
        throw std::invalid_argument("LogisticModel: feature length mismatch");
    }
    return 1.0 / (1.0 + std::exp(-(weights.dot(f) + bias)));
}

double logistic_loss(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                     const Eigen::VectorXd& weights, double bias, Eigen::VectorXd* grad_w,
                     double* grad_b) {
    const int n = static_cast<int>(features.rows());
    if (static_cast<int>(labels.size()) != n) {
        throw std::invalid_argument("logistic_loss: label count mismatch");
    }
    double loss = 0.0;
    Eigen::VectorXd gw = Eigen::VectorXd::Zero(weights.size());
    double gb = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = weights.dot(features.row(i)) + bias;
        const double p = 1.0 / (1.0 + std::exp(-z));
        const double y = static_cast<double>(labels[i]);
        // Numerically stable cross-entropy: log(1 + e^z) - y z.
        loss += (z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z))) - y * z;
        const double residual = p - y;
        gw += residual * features.row(i).transpose();
        gb += residual;
    }
    loss /= n;
    if (grad_w != nullptr) {
        *grad_w = gw / n;
    }
    if (grad_b != nullptr) {
        *grad_b = gb / n;
    }
    return loss;
}

LogisticModel train_logistic(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                             int epochs, double learning_rate) {
    LogisticModel model;
    model.weights = Eigen::VectorXd::Zero(features.cols());
    model.bias = 0.0;
    Eigen::VectorXd grad_w;
    double grad_b = 0.0;
    for (int epoch = 0; epoch < epochs; ++epoch) {
        const double loss = logistic_loss(features, labels, model.weights, model.bias, &grad_w,
                                          &grad_b);
        if (!std::isfinite(loss)) {
            throw std::runtime_error("train_logistic: loss diverged at learning rate " +
                                     std::to_string(learning_rate));
        }
        model.weights -= learning_rate * grad_w;
        model.bias -= learning_rate * grad_b;
    }
    return model;
}

LogisticModel train_spiral(const SpiralConfig& cfg, const ModeUnitary& reservoir,
                           const std::vector<SpiralPoint>& train, std::uint64_t seed) {
    if (reservoir.dim() != 4) {
        throw std::invalid_argument("train_spiral: reservoir must act on 4 modes");
    }
    const int n = static_cast<int>(train.size());
    const auto labels = labels_of(train);
    const Eigen::MatrixXd clean = spiral_feature_matrix(train, reservoir, cfg.encoding);
    const auto scaler = FeatureScaler::fit(clean);

    if (cfg.epsilon == 0.0) {
        // No perturbation: features are constant across epochs.
        return fold_scaler(
            train_logistic(scaler.apply(clean), labels, cfg.epochs, cfg.learning_rate), scaler);
    }

    LogisticModel model;
    model.weights = Eigen::VectorXd::Zero(spiral_outcome_basis().size());
    model.bias = 0.0;
    Eigen::MatrixXd features(n, spiral_outcome_basis().size());
    Eigen::VectorXd grad_w;
    double grad_b = 0.0;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const std::uint64_t epoch_seed = derive_seed(seed, epoch);
        // Every sample sees its own freshly perturbed reservoir.
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) {
            const auto perturbed =
                perturb_unitary(reservoir, cfg.epsilon, derive_seed(epoch_seed, i));
            const ModeUnitary total{perturbed.mat *
                                    encode_for(cfg.encoding, train[i].x, train[i].y).mat};
            features.row(i) = spiral_features(total).transpose();
        }
        const double loss = logistic_loss(scaler.apply(features), labels, model.weights,
                                          model.bias, &grad_w, &grad_b);
        if (!std::isfinite(loss)) {
            throw std::runtime_error("train_spiral: loss diverged at learning rate " +
                                     std::to_string(cfg.learning_rate));
        }
        model.weights -= cfg.learning_rate * grad_w;
        model.bias -= cfg.learning_rate * grad_b;
    }
    return fold_scaler(model, scaler);
}

double evaluate_spiral(const LogisticModel& model, const SpiralConfig& cfg,
                       const std::vector<SpiralPoint>& test, const ModeUnitary& hardware) {
    return accuracy(model, spiral_feature_matrix(test, hardware, cfg.encoding), labels_of(test));
}

double classical_baseline(const SpiralConfig& cfg, const ModeUnitary& reservoir,
                          const std::vector<SpiralPoint>& train,
                          const std::vector<SpiralPoint>& test, std::uint64_t /*seed*/) {
    const Eigen::MatrixXd x_train = classical_feature_matrix(train, reservoir, cfg.encoding);
    const auto scaler = FeatureScaler::fit(x_train);
    const auto model = fold_scaler(train_logistic(scaler.apply(x_train), labels_of(train),
                                                  cfg.epochs, cfg.learning_rate),
                                   scaler);
    return accuracy(model, classical_feature_matrix(test, reservoir, cfg.encoding),
                    labels_of(test));
}

ResultRecord run_spiral_study(const SpiralConfig& cfg) {
    if (cfg.epsilons.empty() || cfg.epsilons.front() != 0.0 ||
        !std::is_sorted(cfg.epsilons.begin(), cfg.epsilons.end())) {
        throw std::invalid_argument("spiral: epsilon sweep must be ascending and start at 0");
    }
    if (cfg.hardware_epsilon < 0.0 || cfg.epsilon < 0.0) {
        throw std::invalid_argument("spiral: perturbation amplitudes must be >= 0");
    }
    const auto train = spiral_dataset(cfg.points_per_class, cfg.noise_sd,
                                      derive_seed(cfg.master_seed, stream::train_data));
    const auto test = spiral_dataset(cfg.points_per_class, cfg.noise_sd,
                                     derive_seed(cfg.master_seed, stream::test_data));

    const int realizations = cfg.reservoir_realizations;
    const int eps_count = static_cast<int>(cfg.epsilons.size());

    // One work unit per (realization, epsilon); the classical baseline and
    // the clean quantum evaluation ride along at epsilon index 0.
    std::vector<std::vector<double>> acc_hw(eps_count,
                                            std::vector<double>(realizations, 0.0));
    std::vector<std::vector<double>> acc_clean(eps_count,
                                               std::vector<double>(realizations, 0.0));
    std::vector<double> acc_classical(realizations, 0.0);

#pragma omp parallel for schedule(dynamic) collapse(2)
    for (int r = 0; r < realizations; ++r) {
        for (int e = 0; e < eps_count; ++e) {
            const auto reservoir =
                haar_unitary(4, derive_seed(derive_seed(cfg.master_seed, stream::reservoir), r));
            const auto hardware = perturb_unitary(
                reservoir, cfg.hardware_epsilon,
                derive_seed(derive_seed(cfg.master_seed, stream::hardware), r));
            SpiralConfig local = cfg;
            local.epsilon = cfg.epsilons[e];
            const std::uint64_t train_seed =
                derive_seed(derive_seed(derive_seed(cfg.master_seed, stream::training), r), e);
            const auto model = train_spiral(local, reservoir, train, train_seed);
            acc_hw[e][r] = evaluate_spiral(model, cfg, test, hardware);
            acc_clean[e][r] = evaluate_spiral(model, cfg, test, reservoir);
            if (e == 0) {
                acc_classical[r] = classical_baseline(cfg, reservoir, train, test, train_seed);
            }
        }
    }

    ResultRecord record;
    record.experiment = "spiral";
    nlohmann::json rows = nlohmann::json::array();
    for (int e = 0; e < eps_count; ++e) {
        record.series["accuracy_hw_eps_" + std::to_string(e)] = acc_hw[e];
        rows.push_back({{"epsilon", cfg.epsilons[e]},
                        {"mean_accuracy_hw", mean_of(acc_hw[e])},
                        {"sd_accuracy_hw", sd_of(acc_hw[e])},
                        {"mean_accuracy_clean", mean_of(acc_clean[e])},
                        {"sd_accuracy_clean", sd_of(acc_clean[e])}});
    }
    record.series["accuracy_classical"] = acc_classical;
    record.payload["epsilon_curve"] = rows;
    record.payload["epsilons"] = cfg.epsilons;

    // Paired comparison of the best epsilon against epsilon = 0.
    int best = 0;
    std::vector<double> mean_acc(eps_count);
    for (int e = 0; e < eps_count; ++e) {
        mean_acc[e] = mean_of(acc_hw[e]);
        if (mean_acc[e] > mean_acc[best]) {
            best = e;
        }
    }
    std::vector<double> paired_diff(realizations);
    for (int r = 0; r < realizations; ++r) {
        paired_diff[r] = acc_hw[best][r] - acc_hw[0][r];
    }
    record.summary["best_epsilon"] = cfg.epsilons[best];
    record.summary["best_epsilon_index"] = best;
    record.summary["mean_accuracy_best"] = mean_acc[best];
    record.summary["mean_accuracy_eps0"] = mean_acc[0];
    record.summary["paired_gain_mean"] = mean_of(paired_diff);
    record.summary["paired_gain_se"] =
        sd_of(paired_diff) / std::sqrt(static_cast<double>(realizations));
    record.summary["mean_accuracy_clean_eps0"] = mean_of(acc_clean[0]);
    record.summary["mean_accuracy_classical"] = mean_of(acc_classical);
    record.summary["sd_accuracy_classical"] = sd_of(acc_classical);
    return record;
}

} // namespace qrp
