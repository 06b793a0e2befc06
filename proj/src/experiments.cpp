// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrp/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "experiments_internal.hpp"
#include "qrp/lift.hpp"
#include "qrp/rng.hpp"

namespace qrp {

double mean_of(const std::vector<double>& values) {
    if (values.empty()) {
        return 0.0;
    }
    double total = 0.0;
    for (double v : values) {
        total += v;
    }
    return total / static_cast<double>(values.size());
}

double sd_of(const std::vector<double>& values) {
    if (values.size() < 2) {
        return 0.0;
    }
    const double mean = mean_of(values);
    double ss = 0.0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

DensityMatrix mixed_state_from_source(const ModeUnitary& u_source, int state_modes,
                                      int circuit_modes) {
    if (u_source.dim() != 4) {
        throw std::invalid_argument("mixed_state_from_source: source unitary must be 4x4");
    }
    if (circuit_modes != 6) {
        throw std::invalid_argument("mixed_state_from_source: the layout uses a 6-mode circuit");
    }
    if (state_modes != 2 && state_modes != 3) {
        throw std::invalid_argument("mixed_state_from_source: state_modes must be 2 or 3");
    }
    const auto u6 = embed_unitary(u_source, circuit_modes, {2, 3, 4, 5});
    const auto basis = FockBasis::fixed(circuit_modes, 2);
    const auto psi = lift_column(u6, basis, {0, 0, 1, 0, 1, 0});
    const auto rho_full = density_from_amplitudes(basis, psi);
    const std::vector<int> kept =
        (state_modes == 2) ? std::vector<int>{2, 3} : std::vector<int>{2, 3, 4};
    return partial_trace(rho_full, kept);
}

std::vector<MixedStateSample> gen_mixed_state_dataset(int count, int state_modes,
                                                      std::uint64_t master_seed) {
    if (count < 1) {
        throw std::invalid_argument("gen_mixed_state_dataset: count must be >= 1");
    }
    std::vector<MixedStateSample> dataset(count);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) {
        const auto u = haar_unitary(4, derive_seed(master_seed, i));
        dataset[i] = MixedStateSample{u, mixed_state_from_source(u, state_modes)};
    }
    return dataset;
}

NoonState noon_from_draws(double n, double gamma, double phase_unit) {
    const double n1 = 1.0 - n;
    const double n2 = n;
    return NoonState{n1, n2, gamma * std::sqrt(std::max(n1 * n2, 0.0)),
                     2.0 * M_PI * phase_unit};
}

std::vector<std::pair<NoonState, DensityMatrix>> gen_noon_dataset(int count,
                                                                  std::uint64_t master_seed) {
    if (count < 1) {
        throw std::invalid_argument("gen_noon_dataset: count must be >= 1");
    }
    std::vector<std::pair<NoonState, DensityMatrix>> dataset;
    dataset.reserve(count);
    for (int i = 0; i < count; ++i) {
        Rng rng(derive_seed(master_seed, i));
        const double n = rng.uniform();
        const double gamma = rng.uniform();
        const double phase_unit = rng.uniform();
        const auto state = noon_from_draws(n, gamma, phase_unit);
        dataset.emplace_back(state, noon_density(state));
    }
    return dataset;
}

int rank_diagnostic(const Eigen::MatrixXd& features) {
    if (features.rows() < 2) {
        throw std::invalid_argument("rank_diagnostic: at least two samples required");
    }
    Eigen::MatrixXd augmented(features.rows(), features.cols() + 1);
    augmented.leftCols(features.cols()) = features;
    augmented.col(features.cols()).setOnes();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(augmented);
    const auto& sigma = svd.singularValues();
    const double threshold = 1e-8 * sigma(0);
    int rank = 0;
    for (int k = 0; k < sigma.size(); ++k) {
        if (sigma(k) > threshold) {
            ++rank;
        }
    }
    return rank;
}

ResultRecord run_rank_study(std::uint64_t master_seed, int sample_count) {
    const auto noon_data = gen_noon_dataset(sample_count, derive_seed(master_seed, stream::dataset));

    const auto r3 = haar_unitary(3, derive_seed(master_seed, stream::reservoir));
    const auto r2 = haar_unitary(2, derive_seed(master_seed, stream::reservoir + 1));
    const int rank_noon_3 = rank_diagnostic(detail::noon_feature_matrix(noon_data, 3, r3));
    const int rank_noon_2 = rank_diagnostic(detail::noon_feature_matrix(noon_data, 2, r2));

    const auto mixed = gen_mixed_state_dataset(sample_count, 2,
                                               derive_seed(master_seed, stream::dataset + 1));
    const auto r4 = haar_unitary(4, derive_seed(master_seed, stream::reservoir + 2));
    const int rank_tomo = rank_diagnostic(tomography_features(mixed, r4, 0, 0));

    ResultRecord record;
    record.experiment = "rank";
    record.config = {{"experiment", "rank"}, {"seed", master_seed}, {"samples", sample_count}};
    record.summary["rank_noon_3det"] = rank_noon_3;
    record.summary["rank_noon_2det"] = rank_noon_2;
    record.summary["rank_tomography_2mode"] = rank_tomo;
    record.payload["expected"] = {{"rank_noon_3det", 4}, {"rank_noon_2det", 3},
                                  {"rank_tomography_2mode", 14}};
    return record;
}

} // namespace qrp
