// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace qrp {

/// An m x m complex unitary acting on optical modes.
struct ModeUnitary {
    Eigen::MatrixXcd mat;

    int dim() const { return static_cast<int>(mat.rows()); }

    /// Max-norm deviation of U†U from the identity.
    double unitarity_defect() const;
    bool is_unitary(double tol = 1e-10) const { return unitarity_defect() <= tol; }
};

/// Haar-distributed random unitary (Ginibre draw, QR factorization, phases
/// corrected so R's diagonal is positive real). Deterministic per seed.
ModeUnitary haar_unitary(int dim, std::uint64_t seed);

/// Shifts the real and imaginary part of every entry by independent
/// N(0, epsilon^2) draws, then projects back to the nearest unitary in
/// Frobenius norm (polar decomposition). epsilon = 0 returns U unchanged.
ModeUnitary perturb_unitary(const ModeUnitary& u, double epsilon, std::uint64_t seed);

/// Embeds `u` into a `total_modes`-mode identity, acting on the listed
/// modes (placement[k] is the global index of u's k-th mode).
ModeUnitary embed_unitary(const ModeUnitary& u, int total_modes,
                          const std::vector<int>& placement);

} // namespace qrp
