// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qrp/density.hpp"
#include "qrp/fock.hpp"

namespace qrp {

/// Addresses of the independent real parameters of a density matrix with a
/// declared block structure: the free diagonal entries (all but the last,
/// which is trace-determined) followed by the real and imaginary parts of
/// the strictly upper within-block entries. A dense d x d target has
/// d^2 - 1 parameters; declared blocks of sizes k give (sum k^2) - 1.
class ParamStructure {
  public:
    enum class Part { Real, Imag };

    struct Slot {
        int row;
        int col;
        Part part;
    };

    /// Blocks follow the photon-number sectors of the basis.
    static ParamStructure blocked(const FockBasis& basis);

    /// Single dense block covering the whole matrix.
    static ParamStructure dense(const FockBasis& basis);

    const FockBasis& basis() const { return basis_; }
    int param_count() const { return static_cast<int>(slots_.size()); }
    const std::vector<Slot>& free_slots() const { return slots_; }
    const std::vector<std::pair<int, int>>& blocks() const { return blocks_; }

    /// True if (row, col) lies inside one of the declared blocks.
    bool in_block(int row, int col) const;

  private:
    ParamStructure(FockBasis basis, std::vector<std::pair<int, int>> blocks);

    FockBasis basis_;
    std::vector<std::pair<int, int>> blocks_; // (offset, size) per block
    std::vector<Slot> slots_;
};

/// Extracts the parameter vector of rho in free-slot order. Inverse of
/// unpack_params on Hermitian trace-1 inputs respecting the block structure.
Eigen::VectorXd pack_params(const DensityMatrix& rho, const ParamStructure& structure);

/// Reshapes a parameter vector into a raw (possibly unphysical) matrix:
/// free slots filled, last diagonal set to 1 - sum of the others, slots
/// outside the declared blocks zeroed. Positivity is NOT enforced here.
Eigen::MatrixXcd unpack_params(const Eigen::VectorXd& params, const ParamStructure& structure);

/// rho_H = rho~ + rho~† - diag(rho~).
Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& rho_tilde);

/// Eigendecomposes, clips negative eigenvalues to zero, renormalizes the
/// spectrum to sum 1, and recomposes. A degenerate input (non-positive
/// spectrum mass below 1e-12) yields the maximally mixed state and sets
/// *degenerate when provided.
DensityMatrix project_physical(const Eigen::MatrixXcd& rho_h, const FockBasis& basis,
                               bool* degenerate = nullptr);

/// Column standardization fitted on training data: x -> (x - mean) / sd.
/// Zero-variance columns pass through unscaled. Regularization strengths
/// stay meaningful across feature scales when the readout is fit on
/// standardized features.
struct FeatureScaler {
    Eigen::RowVectorXd mean;
    Eigen::RowVectorXd scale;

    static FeatureScaler fit(const Eigen::MatrixXd& x);
    Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
};

/// A fitted multi-output affine map y = W x + b.
struct RidgeModel {
    Eigen::MatrixXd weights;   // targets x features
    Eigen::VectorXd intercept; // targets
    double alpha = 0.0;

    int feature_count() const { return static_cast<int>(weights.cols()); }
    int target_count() const { return static_cast<int>(weights.rows()); }
};

/// Closed-form multi-output ridge regression with an unregularized
/// intercept: columns of X and Y are centered, W solves
/// (Xc' Xc + alpha I) W' = Xc' Yc, and b = ybar - W xbar.
/// Throws if alpha = 0 and the normal matrix is singular.
RidgeModel ridge_fit(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, double alpha);

Eigen::VectorXd ridge_predict(const RidgeModel& model, const Eigen::VectorXd& x);

/// Row-wise prediction for a batch of samples.
Eigen::MatrixXd ridge_predict_batch(const RidgeModel& model, const Eigen::MatrixXd& x);

/// Uhlmann fidelity F = (Tr sqrt(sqrt(a) b sqrt(a)))^2. Matrix square
/// roots via eigendecomposition with negative dust clipped at -1e-10;
/// anything more negative is an input error.
double fidelity(const DensityMatrix& rho_a, const DensityMatrix& rho_b);

} // namespace qrp
