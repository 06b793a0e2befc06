// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qrp/density.hpp"
#include "qrp/metrics.hpp"
#include "qrp/tomography.hpp"
#include "qrp/unitary.hpp"

namespace qrp {

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct TomographyConfig {
    int state_modes = 2;    // 2 or 3
    int circuit_modes = 6;  // Fig-2a-style layout: photons in modes 2 and 4,
                            // source unitary on modes 2..5 (0-based)
    int reservoir_modes = 4;
    int dataset_size = 100;
    int train_count = 70;
    std::vector<int> train_counts; // optional curve; empty means {train_count}
    int split_seeds = 50;          // number of train/test resamplings
    std::int64_t shots = 0;        // 0 = exact probabilities
    double alpha = 1e-3;
    std::uint64_t master_seed = 1;
    std::uint64_t reservoir_salt = 0; // extra reservoir-stream index (size sweeps)
};

struct NoonConfig {
    int train_count = 1500;
    int test_count = 150;
    int reservoir_count = 50;
    int detector_count = 3; // 2 or 3
    double alpha = 1e-3;
    std::uint64_t master_seed = 1;
};

struct SpiralConfig {
    int points_per_class = 300;
    double noise_sd = 0.02;
    double epsilon = 0.075; // training perturbation amplitude
    std::vector<double> epsilons = {0.0, 0.025, 0.05, 0.075, 0.1, 0.15};
    int epochs = 2000;
    double learning_rate = 2.0;
    double hardware_epsilon = 0.075; // test-time mismatch amplitude
    int reservoir_realizations = 10;
    std::string encoding = "polar"; // "polar" | "cartesian"
    std::uint64_t master_seed = 1;
};

/// Aggregated outcome of one experiment: per-unit metric series, summary
/// scalars recomputable from them, and structured tables for plotting.
struct ResultRecord {
    std::string experiment;
    nlohmann::json config;
    std::map<std::string, std::vector<double>> series;
    std::map<std::string, double> summary;
    nlohmann::json payload;
};

double mean_of(const std::vector<double>& values);
double sd_of(const std::vector<double>& values); // sample standard deviation

// ---------------------------------------------------------------------------
// Datasets
// ---------------------------------------------------------------------------

struct MixedStateSample {
    ModeUnitary u_source; // the 4x4 state-preparation unitary
    DensityMatrix rho_in; // analytic label on the kept modes
};

/// The Fig-2a-style preparation: two photons enter a 6-mode circuit in
/// modes 2 and 4, u_source acts on modes 2..5, and the ancilla modes are
/// traced out (modes 4,5 for a two-mode state, mode 5 for three modes).
DensityMatrix mixed_state_from_source(const ModeUnitary& u_source, int state_modes,
                                      int circuit_modes = 6);

std::vector<MixedStateSample> gen_mixed_state_dataset(int count, int state_modes,
                                                      std::uint64_t master_seed);

/// The documented draw transformation: n1 = 1-n, n2 = n,
/// sigma = gamma sqrt(n1 n2), phi = 2 pi phase_unit.
NoonState noon_from_draws(double n, double gamma, double phase_unit);

std::vector<std::pair<NoonState, DensityMatrix>> gen_noon_dataset(int count,
                                                                  std::uint64_t master_seed);

// ---------------------------------------------------------------------------
// Mixed-state tomography (QRP vs PNR benchmark, reservoir-size sweep)
// ---------------------------------------------------------------------------

/// PNR feature matrix (samples x outcomes) of the dataset pushed through a
/// reservoir unitary; the outcome space is the up-to-2 basis over
/// `reservoir_modes` modes with the state embedded in the last modes.
/// shots = 0 keeps exact probabilities; otherwise empirical frequencies.
Eigen::MatrixXd tomography_features(const std::vector<MixedStateSample>& dataset,
                                    const ModeUnitary& reservoir, std::int64_t shots,
                                    std::uint64_t shot_seed);

struct TomographyBranchResult {
    bool used_reservoir = false;
    std::vector<double> split_fidelity; // mean test fidelity per resampling
    double mean_fidelity = 0.0;
    double sd_fidelity = 0.0;
    double offdiag_pred_mean = 0.0;     // mean |predicted off-diagonal|, all pairs
    double coherence_scale_true = 0.0;  // mean |true off-diagonal|, all pairs
    double offdiag_pred_mean_free = 0.0;    // within-block (free) pairs only
    double coherence_scale_true_free = 0.0; // within-block (free) pairs only
    // train-count curve: (train_count, per-split fidelities)
    std::vector<std::pair<int, std::vector<double>>> curve;
};

TomographyBranchResult run_tomography_experiment(const TomographyConfig& cfg,
                                                 bool use_reservoir);

/// Runs both branches (shared dataset and splits) and assembles the record.
ResultRecord run_tomography_study(const TomographyConfig& cfg);

/// Fidelity-vs-reservoir-size sweep with a fresh Haar reservoir per size.
ResultRecord sweep_reservoir_size(const TomographyConfig& cfg, const std::vector<int>& sizes);

// ---------------------------------------------------------------------------
// NOON-family feature estimation
// ---------------------------------------------------------------------------

struct NoonSeriesResult {
    bool used_reservoir = false;
    int detector_count = 0;
    int realizations = 0;
    // per-realization RMSE of the via-density-matrix route
    std::vector<double> rmse_purity;
    std::vector<double> rmse_entropy;
    std::vector<double> rmse_negativity;
    double mean_abs_negativity_pred = 0.0;
    // per test state: truth and realization-averaged prediction
    std::vector<NoonMetrics> truth;
    std::vector<NoonMetrics> predicted;
};

NoonSeriesResult run_noon_experiment(const NoonConfig& cfg, bool use_reservoir);

/// Benchmark (identity, 2 detectors) plus QRP at cfg.detector_count.
ResultRecord run_noon_study(const NoonConfig& cfg);

/// Ridge from features straight to (P, S, N), reported next to the
/// via-density-matrix route on identical data.
ResultRecord direct_feature_regression(const NoonConfig& cfg);

// ---------------------------------------------------------------------------
// Spiral classification with hardware-aware training
// ---------------------------------------------------------------------------

struct SpiralPoint {
    double x;
    double y;
    int label; // 0 or 1
};

/// Two intertwined Archimedean arms, t uniform in [0, 3 pi], arm 1 rotated
/// by pi, isotropic Gaussian noise, coordinates clamped into [-1, 1]^2.
std::vector<SpiralPoint> spiral_dataset(int points_per_class, double noise_sd,
                                        std::uint64_t seed);

/// Dual-rail encoding of a point into a 4-mode unitary: modes (0,1) receive
/// a beamsplitter-with-phase block with theta = pi(x+1)/2, phi = pi(y+1),
/// modes (2,3) the block with theta = pi(y+1)/2, phi = pi(x+1). One photon
/// is injected per rail pair (input |1,0,1,0>).
ModeUnitary encode_point(double x, double y);

/// Same dual-rail block structure with a spiral-aligned parametrization:
/// with r = min(1, hypot(x, y)) and a = atan2(y, x), pair one carries
/// theta = pi r / 2, phi = a - 3 pi r and pair two theta = pi r, phi = a.
/// The phase a - 3 pi r tracks the arms of a 3-pi Archimedean spiral, which
/// a linear readout over the Cartesian encoding provably cannot resolve.
ModeUnitary encode_point_polar(double x, double y);

/// Exact PNR features (up-to-2 outcome basis, 15 entries) of the encoded
/// two-photon state propagated through `transform` (reservoir * encoder).
Eigen::VectorXd spiral_features(const ModeUnitary& transform);

/// Mean output intensities per mode for the coherent-state baseline input
/// (1,0,1,0)/sqrt(2): the 4-feature classical analogue.
Eigen::VectorXd classical_features(const ModeUnitary& transform);

/// Linear-logistic readout: p = sigmoid(w.f + b).
struct LogisticModel {
    Eigen::VectorXd weights;
    double bias = 0.0;

    double probability(const Eigen::VectorXd& f) const;
};

/// Full-batch gradient descent on the cross-entropy loss of fixed features.
/// Throws std::runtime_error naming the learning rate if the loss diverges.
LogisticModel train_logistic(const Eigen::MatrixXd& features,
                             const std::vector<int>& labels, int epochs,
                             double learning_rate);

/// Cross-entropy loss and its gradient at (weights, bias); the gradient
/// check oracle differentiates this same loss by central differences.
double logistic_loss(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                     const Eigen::VectorXd& weights, double bias,
                     Eigen::VectorXd* grad_w = nullptr, double* grad_b = nullptr);

/// Readout trained on PNR features where every sample at every epoch sees a
/// freshly perturbed reservoir perturb(U_R, cfg.epsilon). Features are
/// standardized with statistics of the clean training features and the
/// scaling is folded back, so the returned model is a plain affine map on
/// raw features. Deterministic per seed; epsilon = 0 reuses exact features
/// across epochs.
LogisticModel train_spiral(const SpiralConfig& cfg, const ModeUnitary& reservoir,
                           const std::vector<SpiralPoint>& train, std::uint64_t seed);

/// Classification accuracy of the readout on `test` evaluated through the
/// given hardware unitary, using the configured encoding.
double evaluate_spiral(const LogisticModel& model, const SpiralConfig& cfg,
                       const std::vector<SpiralPoint>& test, const ModeUnitary& hardware);

/// Trains and evaluates the coherent-light baseline (4 intensity features,
/// no perturbation) on the same splits; returns clean test accuracy.
double classical_baseline(const SpiralConfig& cfg, const ModeUnitary& reservoir,
                          const std::vector<SpiralPoint>& train,
                          const std::vector<SpiralPoint>& test, std::uint64_t seed);

/// The full mitigation study: accuracy vs training epsilon on mismatched
/// hardware, averaged over reservoir realizations, plus the classical line.
ResultRecord run_spiral_study(const SpiralConfig& cfg);

// ---------------------------------------------------------------------------
// Feature-matrix rank diagnostic
// ---------------------------------------------------------------------------

/// Numerical rank of [features | 1] at singular-value threshold
/// 1e-8 * sigma_max.
int rank_diagnostic(const Eigen::MatrixXd& features);

/// Rank checks for the NOON (2 and 3 detectors) and two-mode tomography
/// feature matrices.
ResultRecord run_rank_study(std::uint64_t master_seed, int sample_count = 200);

} // namespace qrp
