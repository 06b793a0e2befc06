// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrp/tomography.hpp"

#include <cmath>
#include <stdexcept>

namespace qrp {

ParamStructure::ParamStructure(FockBasis basis, std::vector<std::pair<int, int>> blocks)
    : basis_(std::move(basis)), blocks_(std::move(blocks)) {
    const int d = basis_.size();
    // Free diagonals: every diagonal entry except the global last one.
    for (int k = 0; k < d - 1; ++k) {
        slots_.push_back({k, k, Part::Real});
    }
    // Strictly upper off-diagonals within blocks, row-major, (re, im) pairs.
    for (const auto& [offset, size] : blocks_) {
        for (int r = offset; r < offset + size; ++r) {
            for (int c = r + 1; c < offset + size; ++c) {
                slots_.push_back({r, c, Part::Real});
                slots_.push_back({r, c, Part::Imag});
            }
        }
    }
}

ParamStructure ParamStructure::blocked(const FockBasis& basis) {
    return ParamStructure(basis, basis.sector_ranges());
}

ParamStructure ParamStructure::dense(const FockBasis& basis) {
    return ParamStructure(basis, {{0, basis.size()}});
}

bool ParamStructure::in_block(int row, int col) const {
    for (const auto& [offset, size] : blocks_) {
        if (row >= offset && row < offset + size && col >= offset && col < offset + size) {
            return true;
        }
    }
    return false;
}

Eigen::VectorXd pack_params(const DensityMatrix& rho, const ParamStructure& structure) {
    if (!(rho.basis == structure.basis())) {
        throw std::invalid_argument("pack_params: basis mismatch");
    }
    const auto& slots = structure.free_slots();
    Eigen::VectorXd out(structure.param_count());
    for (int k = 0; k < structure.param_count(); ++k) {
        const auto& slot = slots[k];
        const std::complex<double> entry = rho.mat(slot.row, slot.col);
        out(k) = (slot.part == ParamStructure::Part::Real) ? entry.real() : entry.imag();
    }
    return out;
}

Eigen::MatrixXcd unpack_params(const Eigen::VectorXd& params, const ParamStructure& structure) {
    if (params.size() != structure.param_count()) {
        throw std::invalid_argument("unpack_params: parameter length mismatch");
    }
    const int d = structure.basis().size();
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(d, d);
    const auto& slots = structure.free_slots();
    for (int k = 0; k < structure.param_count(); ++k) {
        const auto& slot = slots[k];
        if (slot.part == ParamStructure::Part::Real) {
            mat(slot.row, slot.col) += params(k);
        } else {
            mat(slot.row, slot.col) += std::complex<double>(0.0, params(k));
        }
    }
    double diag_sum = 0.0;
    for (int k = 0; k < d - 1; ++k) {
        diag_sum += mat(k, k).real();
    }
    mat(d - 1, d - 1) = 1.0 - diag_sum;
    return mat;
}

Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& rho_tilde) {
    if (rho_tilde.rows() != rho_tilde.cols()) {
        throw std::invalid_argument("hermitize: matrix must be square");
    }
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(rho_tilde.rows(), rho_tilde.cols());
    diag.diagonal() = rho_tilde.diagonal();
    return rho_tilde + rho_tilde.adjoint() - diag;
}

DensityMatrix project_physical(const Eigen::MatrixXcd& rho_h, const FockBasis& basis,
                               bool* degenerate) {
    if (rho_h.rows() != rho_h.cols() || rho_h.rows() != basis.size()) {
        throw std::invalid_argument("project_physical: dimension mismatch with basis");
    }
    if ((rho_h - rho_h.adjoint()).cwiseAbs().maxCoeff() > 1e-8) {
        throw std::invalid_argument("project_physical: input not Hermitian within 1e-8");
    }
    if (degenerate != nullptr) {
        *degenerate = false;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_h);
    Eigen::VectorXd lambda = solver.eigenvalues().cwiseMax(0.0);
    const double mass = lambda.sum();
    const int d = basis.size();
    if (mass < 1e-12) {
        if (degenerate != nullptr) {
            *degenerate = true;
        }
        return DensityMatrix{basis, Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d)};
    }
    lambda /= mass;
    const Eigen::MatrixXcd v = solver.eigenvectors();
    return DensityMatrix{basis, v * lambda.asDiagonal() * v.adjoint()};
}

FeatureScaler FeatureScaler::fit(const Eigen::MatrixXd& x) {
    FeatureScaler scaler;
    scaler.mean = x.colwise().mean();
    const Eigen::MatrixXd centered = x.rowwise() - scaler.mean;
    const int n = std::max<int>(static_cast<int>(x.rows()) - 1, 1);
    scaler.scale = (centered.array().square().colwise().sum() / n).sqrt();
    for (int j = 0; j < scaler.scale.size(); ++j) {
        if (scaler.scale(j) < 1e-300) {
            scaler.scale(j) = 1.0;
        }
    }
    return scaler;
}

Eigen::MatrixXd FeatureScaler::apply(const Eigen::MatrixXd& x) const {
    if (x.cols() != mean.size()) {
        throw std::invalid_argument("FeatureScaler: feature count mismatch");
    }
    return (x.rowwise() - mean).array().rowwise() / scale.array();
}

Eigen::VectorXd FeatureScaler::apply(const Eigen::VectorXd& x) const {
    if (x.size() != mean.size()) {
        throw std::invalid_argument("FeatureScaler: feature count mismatch");
    }
    return (x.transpose() - mean).array() / scale.array();
}

RidgeModel ridge_fit(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double alpha) {
    if (x.rows() != y.rows()) {
        throw std::invalid_argument("ridge_fit: X and Y must have the same sample count");
    }
    if (x.rows() < 1) {
        throw std::invalid_argument("ridge_fit: at least one sample required");
    }
    if (alpha < 0.0) {
        throw std::invalid_argument("ridge_fit: alpha must be >= 0");
    }
    const Eigen::RowVectorXd x_mean = x.colwise().mean();
    const Eigen::RowVectorXd y_mean = y.colwise().mean();
    const Eigen::MatrixXd xc = x.rowwise() - x_mean;
    const Eigen::MatrixXd yc = y.rowwise() - y_mean;

    Eigen::MatrixXd normal = xc.transpose() * xc;
    normal.diagonal().array() += alpha;

    if (alpha == 0.0) {
        const Eigen::FullPivLU<Eigen::MatrixXd> lu(normal);
        if (!lu.isInvertible()) {
            throw std::invalid_argument(
                "ridge_fit: normal matrix is singular; a regularization alpha > 0 is required");
        }
    }
    const Eigen::LDLT<Eigen::MatrixXd> solver(normal);
    const Eigen::MatrixXd w_t = solver.solve(xc.transpose() * yc); // features x targets

    RidgeModel model;
    model.alpha = alpha;
    model.weights = w_t.transpose();
    model.intercept = y_mean.transpose() - model.weights * x_mean.transpose();
    return model;
}

Eigen::VectorXd ridge_predict(const RidgeModel& model, const Eigen::VectorXd& x) {
    if (x.size() != model.feature_count()) {
        throw std::invalid_argument("ridge_predict: feature length mismatch");
    }
    return model.weights * x + model.intercept;
}

Eigen::MatrixXd ridge_predict_batch(const RidgeModel& model, const Eigen::MatrixXd& x) {
    if (x.cols() != model.feature_count()) {
        throw std::invalid_argument("ridge_predict_batch: feature length mismatch");
    }
    return (x * model.weights.transpose()).rowwise() + model.intercept.transpose();
}

namespace {

Eigen::MatrixXcd matrix_sqrt_psd(const Eigen::MatrixXcd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
    Eigen::VectorXd lambda = solver.eigenvalues();
    // Rounding dust below the relative floor is zeroed outright: sqrt would
    // amplify it from 1e-16 to 1e-8 and spoil the fidelity accuracy.
    const double floor = 1e-14 * std::max(lambda.cwiseAbs().maxCoeff(), 1e-300);
    for (int k = 0; k < lambda.size(); ++k) {
        if (lambda(k) < -1e-10) {
            throw std::invalid_argument("fidelity: input has a negative eigenvalue beyond dust");
        }
        lambda(k) = (lambda(k) > floor) ? std::sqrt(lambda(k)) : 0.0;
    }
    return solver.eigenvectors() * lambda.asDiagonal() * solver.eigenvectors().adjoint();
}

} // namespace

double fidelity(const DensityMatrix& rho_a, const DensityMatrix& rho_b) {
    if (!(rho_a.basis == rho_b.basis)) {
        throw std::invalid_argument("fidelity: basis mismatch");
    }
    const Eigen::MatrixXcd sqrt_a = matrix_sqrt_psd(rho_a.mat);
    const Eigen::MatrixXcd inner = sqrt_a * rho_b.mat * sqrt_a;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(inner, Eigen::EigenvaluesOnly);
    const double floor =
        1e-14 * std::max(solver.eigenvalues().cwiseAbs().maxCoeff(), 1e-300);
    double trace_sqrt = 0.0;
    for (int k = 0; k < solver.eigenvalues().size(); ++k) {
        const double mu = solver.eigenvalues()(k);
        if (mu < -1e-10) {
            throw std::invalid_argument("fidelity: inner matrix eigenvalue beyond dust");
        }
        if (mu > floor) {
            trace_sqrt += std::sqrt(mu);
        }
    }
    return trace_sqrt * trace_sqrt;
}

} // namespace qrp
