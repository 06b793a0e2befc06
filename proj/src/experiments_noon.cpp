// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>

#include "experiments_internal.hpp"
#include "qrp/experiments.hpp"
#include "qrp/lift.hpp"
#include "qrp/rng.hpp"

namespace qrp {

namespace detail {

Eigen::MatrixXd noon_feature_matrix(const std::vector<std::pair<NoonState, DensityMatrix>>& data,
                                    int detector_count, const ModeUnitary& reservoir) {
    const auto basis = FockBasis::fixed(detector_count, 2);
    const auto lifted = lift_unitary(reservoir, basis);
    Eigen::MatrixXd x(static_cast<int>(data.size()), basis.size());
    for (int i = 0; i < static_cast<int>(data.size()); ++i) {
        DensityMatrix rho = data[i].second;
        if (detector_count > 2) {
            rho = embed_vacuum(rho, detector_count, {0, 1});
        }
        const Eigen::MatrixXcd evolved = lifted.mat * rho.mat * lifted.mat.adjoint();
        for (int k = 0; k < basis.size(); ++k) {
            x(i, k) = std::max(evolved(k, k).real(), 0.0);
        }
    }
    return x;
}

} // namespace detail

namespace {

using detail::noon_feature_matrix;

void validate(const NoonConfig& cfg) {
    if (cfg.detector_count != 2 && cfg.detector_count != 3) {
        throw std::invalid_argument("noon: detector_count must be 2 or 3");
    }
    if (cfg.train_count < 1 || cfg.test_count < 1 || cfg.reservoir_count < 1) {
        throw std::invalid_argument("noon: counts must be >= 1");
    }
}

Eigen::MatrixXd bloch_targets(const std::vector<std::pair<NoonState, DensityMatrix>>& data) {
    Eigen::MatrixXd y(static_cast<int>(data.size()), 3);
    for (int i = 0; i < static_cast<int>(data.size()); ++i) {
        const auto a = noon_to_bloch(data[i].first);
        y(i, 0) = a.x;
        y(i, 1) = a.y;
        y(i, 2) = a.z;
    }
    return y;
}

// Physicalized reconstruction from a predicted Bloch vector: vectors
// outside the unit ball are scaled onto it before inversion.
DensityMatrix state_from_predicted_bloch(BlochVector a) {
    const double r = a.norm();
    if (r > 1.0) {
        a.x /= r;
        a.y /= r;
        a.z /= r;
    }
    return noon_density(bloch_to_noon(a));
}

struct RealizationOutcome {
    double rmse_purity;
    double rmse_entropy;
    double rmse_negativity;
    double abs_negativity_sum;
    std::vector<NoonMetrics> predicted; // per test state
};

} // namespace

NoonSeriesResult run_noon_experiment(const NoonConfig& cfg, bool use_reservoir) {
    validate(cfg);
    const int total = cfg.train_count + cfg.test_count;
    const auto data = gen_noon_dataset(total, derive_seed(cfg.master_seed, stream::dataset));
    const Eigen::MatrixXd y = bloch_targets(data);

    const int detector_count = use_reservoir ? cfg.detector_count : 2;
    const int realizations = use_reservoir ? cfg.reservoir_count : 1;

    NoonSeriesResult result;
    result.used_reservoir = use_reservoir;
    result.detector_count = detector_count;
    result.realizations = realizations;
    for (int i = cfg.train_count; i < total; ++i) {
        result.truth.push_back(analytic_noon_metrics(data[i].first));
    }

    std::vector<RealizationOutcome> outcomes(realizations);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < realizations; ++r) {
        const ModeUnitary reservoir =
            use_reservoir
                ? haar_unitary(detector_count,
                               derive_seed(derive_seed(cfg.master_seed, stream::reservoir), r))
                : ModeUnitary{Eigen::MatrixXcd::Identity(2, 2)};
        const Eigen::MatrixXd x = noon_feature_matrix(data, detector_count, reservoir);
        const auto scaler = FeatureScaler::fit(x.topRows(cfg.train_count));
        const auto model = ridge_fit(scaler.apply(Eigen::MatrixXd(x.topRows(cfg.train_count))),
                                     y.topRows(cfg.train_count), cfg.alpha);

        RealizationOutcome out;
        out.predicted.reserve(cfg.test_count);
        double se_p = 0.0;
        double se_s = 0.0;
        double se_n = 0.0;
        double abs_n = 0.0;
        for (int i = cfg.train_count; i < total; ++i) {
            const Eigen::VectorXd pred =
                ridge_predict(model, scaler.apply(Eigen::VectorXd(x.row(i).transpose())));
            const auto rho = state_from_predicted_bloch(BlochVector{pred(0), pred(1), pred(2)});
            const NoonMetrics m{purity(rho), von_neumann_entropy(rho), negativity(rho, 2)};
            const auto& truth = result.truth[i - cfg.train_count];
            se_p += (m.purity - truth.purity) * (m.purity - truth.purity);
            se_s += (m.entropy - truth.entropy) * (m.entropy - truth.entropy);
            se_n += (m.negativity - truth.negativity) * (m.negativity - truth.negativity);
            abs_n += std::abs(m.negativity);
            out.predicted.push_back(m);
        }
        out.rmse_purity = std::sqrt(se_p / cfg.test_count);
        out.rmse_entropy = std::sqrt(se_s / cfg.test_count);
        out.rmse_negativity = std::sqrt(se_n / cfg.test_count);
        out.abs_negativity_sum = abs_n;
        outcomes[r] = std::move(out);
    }

    result.predicted.assign(cfg.test_count, NoonMetrics{0.0, 0.0, 0.0});
    double abs_neg_total = 0.0;
    for (const auto& out : outcomes) {
        result.rmse_purity.push_back(out.rmse_purity);
        result.rmse_entropy.push_back(out.rmse_entropy);
        result.rmse_negativity.push_back(out.rmse_negativity);
        abs_neg_total += out.abs_negativity_sum;
        for (int i = 0; i < cfg.test_count; ++i) {
            result.predicted[i].purity += out.predicted[i].purity / realizations;
            result.predicted[i].entropy += out.predicted[i].entropy / realizations;
            result.predicted[i].negativity += out.predicted[i].negativity / realizations;
        }
    }
    result.mean_abs_negativity_pred =
        abs_neg_total / (static_cast<double>(realizations) * cfg.test_count);
    return result;
}

namespace {

nlohmann::json metrics_json(const NoonMetrics& m) {
    return {{"purity", m.purity}, {"entropy", m.entropy}, {"negativity", m.negativity}};
}

nlohmann::json series_json(const NoonSeriesResult& s) {
    nlohmann::json scatter = nlohmann::json::array();
    for (std::size_t i = 0; i < s.truth.size(); ++i) {
        scatter.push_back({{"true", metrics_json(s.truth[i])},
                           {"predicted", metrics_json(s.predicted[i])}});
    }
    return {{"detector_count", s.detector_count},
            {"used_reservoir", s.used_reservoir},
            {"scatter", scatter}};
}

} // namespace

ResultRecord run_noon_study(const NoonConfig& cfg) {
    const auto qrp_series = run_noon_experiment(cfg, true);
    const auto pnr_series = run_noon_experiment(cfg, false);

    ResultRecord record;
    record.experiment = "noon";
    record.series["rmse_purity_qrp"] = qrp_series.rmse_purity;
    record.series["rmse_entropy_qrp"] = qrp_series.rmse_entropy;
    record.series["rmse_negativity_qrp"] = qrp_series.rmse_negativity;
    record.summary["mean_rmse_purity_qrp"] = mean_of(qrp_series.rmse_purity);
    record.summary["mean_rmse_entropy_qrp"] = mean_of(qrp_series.rmse_entropy);
    record.summary["mean_rmse_negativity_qrp"] = mean_of(qrp_series.rmse_negativity);
    record.summary["mean_rmse_purity_pnr"] = mean_of(pnr_series.rmse_purity);
    record.summary["mean_rmse_entropy_pnr"] = mean_of(pnr_series.rmse_entropy);
    record.summary["mean_rmse_negativity_pnr"] = mean_of(pnr_series.rmse_negativity);
    record.summary["mean_abs_negativity_pred_pnr"] = pnr_series.mean_abs_negativity_pred;
    record.summary["detector_count"] = cfg.detector_count;
    record.payload["qrp"] = series_json(qrp_series);
    record.payload["pnr"] = series_json(pnr_series);
    return record;
}

ResultRecord direct_feature_regression(const NoonConfig& cfg) {
    validate(cfg);
    const int total = cfg.train_count + cfg.test_count;
    const auto data = gen_noon_dataset(total, derive_seed(cfg.master_seed, stream::dataset));

    Eigen::MatrixXd targets(total, 3);
    for (int i = 0; i < total; ++i) {
        const auto m = analytic_noon_metrics(data[i].first);
        targets(i, 0) = m.purity;
        targets(i, 1) = m.entropy;
        targets(i, 2) = m.negativity;
    }

    std::vector<double> rmse_p(cfg.reservoir_count);
    std::vector<double> rmse_s(cfg.reservoir_count);
    std::vector<double> rmse_n(cfg.reservoir_count);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < cfg.reservoir_count; ++r) {
        const auto reservoir =
            haar_unitary(cfg.detector_count,
                         derive_seed(derive_seed(cfg.master_seed, stream::reservoir), r));
        const Eigen::MatrixXd x = noon_feature_matrix(data, cfg.detector_count, reservoir);
        const auto scaler = FeatureScaler::fit(x.topRows(cfg.train_count));
        const auto model = ridge_fit(scaler.apply(Eigen::MatrixXd(x.topRows(cfg.train_count))),
                                     targets.topRows(cfg.train_count), cfg.alpha);
        double se_p = 0.0;
        double se_s = 0.0;
        double se_n = 0.0;
        for (int i = cfg.train_count; i < total; ++i) {
            const Eigen::VectorXd pred =
                ridge_predict(model, scaler.apply(Eigen::VectorXd(x.row(i).transpose())));
            se_p += (pred(0) - targets(i, 0)) * (pred(0) - targets(i, 0));
            se_s += (pred(1) - targets(i, 1)) * (pred(1) - targets(i, 1));
            se_n += (pred(2) - targets(i, 2)) * (pred(2) - targets(i, 2));
        }
        rmse_p[r] = std::sqrt(se_p / cfg.test_count);
        rmse_s[r] = std::sqrt(se_s / cfg.test_count);
        rmse_n[r] = std::sqrt(se_n / cfg.test_count);
    }

    // The via-density-matrix route on identical data, for comparison.
    const auto via_rho = run_noon_experiment(cfg, true);

    ResultRecord record;
    record.experiment = "noon_direct";
    record.series["rmse_purity_direct"] = rmse_p;
    record.series["rmse_entropy_direct"] = rmse_s;
    record.series["rmse_negativity_direct"] = rmse_n;
    record.summary["mean_rmse_purity_direct"] = mean_of(rmse_p);
    record.summary["mean_rmse_entropy_direct"] = mean_of(rmse_s);
    record.summary["mean_rmse_negativity_direct"] = mean_of(rmse_n);
    record.summary["mean_rmse_purity_via_rho"] = mean_of(via_rho.rmse_purity);
    record.summary["mean_rmse_entropy_via_rho"] = mean_of(via_rho.rmse_entropy);
    record.summary["mean_rmse_negativity_via_rho"] = mean_of(via_rho.rmse_negativity);
    record.summary["detector_count"] = cfg.detector_count;
    return record;
}

} // namespace qrp
