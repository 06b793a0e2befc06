// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "experiments_internal.hpp"
#include "qrp/experiments.hpp"
#include "qrp/lift.hpp"
#include "qrp/rng.hpp"

namespace qrp {

namespace {

void validate(const TomographyConfig& cfg) {
    if (cfg.state_modes != 2 && cfg.state_modes != 3) {
        throw std::invalid_argument("tomography: state_modes must be 2 or 3");
    }
    if (cfg.reservoir_modes < cfg.state_modes) {
        throw std::invalid_argument("tomography: reservoir smaller than the state support");
    }
    if (cfg.train_count >= cfg.dataset_size || cfg.train_count < 1) {
        throw std::invalid_argument("tomography: train_count must be in [1, dataset_size)");
    }
    if (cfg.split_seeds < 1) {
        throw std::invalid_argument("tomography: split_seeds must be >= 1");
    }
}

std::vector<int> resolved_train_counts(const TomographyConfig& cfg) {
    if (cfg.train_counts.empty()) {
        return {cfg.train_count};
    }
    for (int tc : cfg.train_counts) {
        if (tc < 1 || tc >= cfg.dataset_size) {
            throw std::invalid_argument("tomography: train_counts entries must be in [1, dataset_size)");
        }
    }
    return cfg.train_counts;
}

// Train indices for one resampling: a partial Fisher-Yates shuffle of
// 0..dataset_size-1 seeded by (master, train_count, split).
std::vector<int> split_indices(int dataset_size, int train_count, std::uint64_t master,
                               int tc_tag, int split) {
    Rng rng(derive_seed(derive_seed(derive_seed(master, stream::splits), tc_tag), split));
    std::vector<int> order(dataset_size);
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i < train_count; ++i) {
        const int j = i + static_cast<int>(rng.next_u64() % (dataset_size - i));
        std::swap(order[i], order[j]);
    }
    return order;
}

} // namespace

Eigen::MatrixXd tomography_features(const std::vector<MixedStateSample>& dataset,
                                    const ModeUnitary& reservoir, std::int64_t shots,
                                    std::uint64_t shot_seed) {
    if (dataset.empty()) {
        throw std::invalid_argument("tomography_features: empty dataset");
    }
    const int state_modes = dataset.front().rho_in.basis.mode_count();
    const int r = reservoir.dim();
    if (r < state_modes) {
        throw std::invalid_argument("tomography_features: reservoir smaller than the state");
    }
    std::vector<int> placement(state_modes);
    for (int k = 0; k < state_modes; ++k) {
        placement[k] = r - state_modes + k;
    }
    const auto outcome_basis = FockBasis::up_to(r, 2);
    const auto lifted = lift_unitary(reservoir, outcome_basis);

    const int count = static_cast<int>(dataset.size());
    Eigen::MatrixXd x(count, outcome_basis.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
        const auto embedded = embed_vacuum(dataset[i].rho_in, r, placement);
        const DensityMatrix evolved{outcome_basis,
                                    lifted.mat * embedded.mat * lifted.mat.adjoint()};
        OutcomeDistribution dist = pnr_distribution(evolved);
        if (shots > 0) {
            dist = sample_counts(dist, shots, derive_seed(shot_seed, i));
        }
        x.row(i) = dist.probabilities.transpose();
    }
    return x;
}

TomographyBranchResult run_tomography_experiment(const TomographyConfig& cfg,
                                                 bool use_reservoir) {
    validate(cfg);
    const auto dataset = gen_mixed_state_dataset(cfg.dataset_size, cfg.state_modes,
                                                 derive_seed(cfg.master_seed, stream::dataset));
    const ModeUnitary reservoir =
        use_reservoir
            ? haar_unitary(cfg.reservoir_modes,
                           derive_seed(derive_seed(cfg.master_seed, stream::reservoir),
                                       cfg.reservoir_salt))
            : ModeUnitary{Eigen::MatrixXcd::Identity(cfg.reservoir_modes, cfg.reservoir_modes)};
    const std::uint64_t shot_stream =
        derive_seed(cfg.master_seed, use_reservoir ? stream::shots_qrp : stream::shots_pnr);
    const Eigen::MatrixXd x = tomography_features(dataset, reservoir, cfg.shots, shot_stream);

    const auto structure = ParamStructure::blocked(dataset.front().rho_in.basis);
    Eigen::MatrixXd y(cfg.dataset_size, structure.param_count());
    for (int i = 0; i < cfg.dataset_size; ++i) {
        y.row(i) = pack_params(dataset[i].rho_in, structure).transpose();
    }

    // Off-diagonal positions: all upper pairs of the matrix, and the
    // within-block subset (the free coherence parameters).
    std::vector<std::pair<int, int>> offdiag_pairs;
    std::vector<std::pair<int, int>> free_pairs;
    for (int r = 0; r < structure.basis().size(); ++r) {
        for (int c = r + 1; c < structure.basis().size(); ++c) {
            offdiag_pairs.emplace_back(r, c);
            if (structure.in_block(r, c)) {
                free_pairs.emplace_back(r, c);
            }
        }
    }

    TomographyBranchResult result;
    result.used_reservoir = use_reservoir;

    const auto train_counts = resolved_train_counts(cfg);
    for (int tc : train_counts) {
        std::vector<double> split_fid(cfg.split_seeds, 0.0);
        std::vector<double> split_offdiag(cfg.split_seeds, 0.0);
        std::vector<double> split_true_scale(cfg.split_seeds, 0.0);
        std::vector<double> split_offdiag_free(cfg.split_seeds, 0.0);
        std::vector<double> split_true_scale_free(cfg.split_seeds, 0.0);
#pragma omp parallel for schedule(dynamic)
        for (int split = 0; split < cfg.split_seeds; ++split) {
            const auto order = split_indices(cfg.dataset_size, tc, cfg.master_seed, tc, split);
            Eigen::MatrixXd x_train(tc, x.cols());
            Eigen::MatrixXd y_train(tc, y.cols());
            for (int i = 0; i < tc; ++i) {
                x_train.row(i) = x.row(order[i]);
                y_train.row(i) = y.row(order[i]);
            }
            // Standardize on the training rows so alpha acts on a common scale.
            const auto scaler = FeatureScaler::fit(x_train);
            const auto model = ridge_fit(scaler.apply(x_train), y_train, cfg.alpha);

            double fid_sum = 0.0;
            double offdiag_sum = 0.0;
            double true_scale_sum = 0.0;
            double offdiag_free_sum = 0.0;
            double true_scale_free_sum = 0.0;
            const int test_count = cfg.dataset_size - tc;
            for (int i = tc; i < cfg.dataset_size; ++i) {
                const int idx = order[i];
                const Eigen::VectorXd pred =
                    ridge_predict(model, scaler.apply(Eigen::VectorXd(x.row(idx).transpose())));
                const auto raw = unpack_params(pred, structure);
                const auto physical = project_physical(hermitize(raw), structure.basis());
                fid_sum += fidelity(physical, dataset[idx].rho_in);
                for (const auto& [r, c] : offdiag_pairs) {
                    offdiag_sum += std::abs(physical.mat(r, c));
                    true_scale_sum += std::abs(dataset[idx].rho_in.mat(r, c));
                }
                for (const auto& [r, c] : free_pairs) {
                    offdiag_free_sum += std::abs(physical.mat(r, c));
                    true_scale_free_sum += std::abs(dataset[idx].rho_in.mat(r, c));
                }
            }
            split_fid[split] = fid_sum / test_count;
            const double pair_count = static_cast<double>(test_count * offdiag_pairs.size());
            const double free_count = static_cast<double>(test_count * free_pairs.size());
            split_offdiag[split] = offdiag_sum / pair_count;
            split_true_scale[split] = true_scale_sum / pair_count;
            split_offdiag_free[split] = offdiag_free_sum / free_count;
            split_true_scale_free[split] = true_scale_free_sum / free_count;
        }
        result.curve.emplace_back(tc, split_fid);
        if (tc == cfg.train_count) {
            result.split_fidelity = split_fid;
            result.mean_fidelity = mean_of(split_fid);
            result.sd_fidelity = sd_of(split_fid);
            result.offdiag_pred_mean = mean_of(split_offdiag);
            result.coherence_scale_true = mean_of(split_true_scale);
            result.offdiag_pred_mean_free = mean_of(split_offdiag_free);
            result.coherence_scale_true_free = mean_of(split_true_scale_free);
        }
    }
    if (result.split_fidelity.empty()) {
        // cfg.train_count not in the curve: use the last entry as primary.
        const auto& last = result.curve.back().second;
        result.split_fidelity = last;
        result.mean_fidelity = mean_of(last);
        result.sd_fidelity = sd_of(last);
    }
    return result;
}

ResultRecord run_tomography_study(const TomographyConfig& cfg) {
    const auto qrp_branch = run_tomography_experiment(cfg, true);
    const auto pnr_branch = run_tomography_experiment(cfg, false);

    ResultRecord record;
    record.experiment = "tomography";
    record.series["fidelity_qrp"] = qrp_branch.split_fidelity;
    record.series["fidelity_pnr"] = pnr_branch.split_fidelity;
    record.summary["mean_fidelity_qrp"] = qrp_branch.mean_fidelity;
    record.summary["sd_fidelity_qrp"] = qrp_branch.sd_fidelity;
    record.summary["mean_fidelity_pnr"] = pnr_branch.mean_fidelity;
    record.summary["sd_fidelity_pnr"] = pnr_branch.sd_fidelity;
    record.summary["offdiag_pred_mean_qrp"] = qrp_branch.offdiag_pred_mean;
    record.summary["offdiag_pred_mean_pnr"] = pnr_branch.offdiag_pred_mean;
    record.summary["coherence_scale_true"] = qrp_branch.coherence_scale_true;
    record.summary["offdiag_pred_mean_free_qrp"] = qrp_branch.offdiag_pred_mean_free;
    record.summary["offdiag_pred_mean_free_pnr"] = pnr_branch.offdiag_pred_mean_free;
    record.summary["coherence_scale_true_free"] = qrp_branch.coherence_scale_true_free;

    nlohmann::json curve = nlohmann::json::array();
    for (std::size_t k = 0; k < qrp_branch.curve.size(); ++k) {
        const auto& [tc, qrp_fid] = qrp_branch.curve[k];
        const auto& pnr_fid = pnr_branch.curve[k].second;
        curve.push_back({{"train_count", tc},
                         {"qrp_mean", mean_of(qrp_fid)},
                         {"qrp_sd", sd_of(qrp_fid)},
                         {"pnr_mean", mean_of(pnr_fid)},
                         {"pnr_sd", sd_of(pnr_fid)}});
    }
    record.payload["curve"] = curve;
    return record;
}

ResultRecord sweep_reservoir_size(const TomographyConfig& cfg, const std::vector<int>& sizes) {
    if (!std::is_sorted(sizes.begin(), sizes.end())) {
        throw std::invalid_argument("sweep_reservoir_size: sizes must be ascending");
    }
    ResultRecord record;
    record.experiment = "sweep";
    nlohmann::json rows = nlohmann::json::array();
    for (int size : sizes) {
        TomographyConfig local = cfg;
        local.reservoir_modes = size;
        local.train_counts.clear();
        local.reservoir_salt = static_cast<std::uint64_t>(size); // fresh reservoir per size
        const auto branch = run_tomography_experiment(local, true);
        const int outcome_up_to = FockBasis::up_to(size, 2).size();
        const int outcome_fixed = FockBasis::fixed(size, 2).size();
        record.series["fidelity_size_" + std::to_string(size)] = branch.split_fidelity;
        rows.push_back({{"reservoir_modes", size},
                        {"outcome_count", outcome_up_to},
                        {"outcome_count_fixed_n", outcome_fixed},
                        {"mean_fidelity", branch.mean_fidelity},
                        {"sd", branch.sd_fidelity}});
        record.summary["mean_fidelity_size_" + std::to_string(size)] = branch.mean_fidelity;
    }
    record.payload["sizes"] = rows;
    return record;
}

} // namespace qrp
