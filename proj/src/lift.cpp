// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrp/lift.hpp"

#include <cmath>
#include <stdexcept>

#include "qrp/permanent.hpp"

namespace qrp {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) {
        f *= i;
    }
    return f;
}

double occupation_factorial(const OccupationVector& occ) {
    double f = 1.0;
    for (int c : occ) {
        f *= factorial(c);
    }
    return f;
}

// Expands mode indices with multiplicity: [0,2,1] -> {1,1,2}.
std::vector<int> repeated_indices(const OccupationVector& occ) {
    std::vector<int> idx;
    idx.reserve(total_photons(occ));
    for (int mode = 0; mode < static_cast<int>(occ.size()); ++mode) {
        for (int k = 0; k < occ[mode]; ++k) {
            idx.push_back(mode);
        }
    }
    return idx;
}

// Stack-allocated submatrix; repeated row/column selections happen per
// matrix element and must not touch the heap.
using ScratchMatrix =
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 20, 20>;

std::complex<double> amplitude(const ModeUnitary& u, const std::vector<int>& rows,
                               const std::vector<int>& cols, double norm) {
    const int n = static_cast<int>(rows.size());
    ScratchMatrix sub(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            sub(i, j) = u.mat(rows[i], cols[j]);
        }
    }
    return permanent(sub) / norm;
}

template <bool Parallel>
FockOperator lift_impl(const ModeUnitary& u, const FockBasis& basis) {
    if (basis.mode_count() != u.dim()) {
        throw std::invalid_argument("lift_unitary: basis mode count must match unitary dim");
    }
    const int d = basis.size();
    std::vector<std::vector<int>> indices(d);
    std::vector<int> totals(d);
    std::vector<double> fact(d);
    for (int k = 0; k < d; ++k) {
        indices[k] = repeated_indices(basis.state(k));
        totals[k] = static_cast<int>(indices[k].size());
        fact[k] = occupation_factorial(basis.state(k));
    }

    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(d, d);
    // Tiny bases are not worth a fork-join.
#pragma omp parallel for schedule(dynamic) if (Parallel && d >= 32)
    for (int row = 0; row < d; ++row) {
        for (int col = 0; col < d; ++col) {
            if (totals[row] != totals[col]) {
                continue; // photon number conserved: off-sector elements stay 0
            }
            mat(row, col) =
                amplitude(u, indices[row], indices[col], std::sqrt(fact[row] * fact[col]));
        }
    }
    return FockOperator{basis, std::move(mat)};
}

} // namespace

FockOperator lift_unitary(const ModeUnitary& u, const FockBasis& basis) {
    return lift_impl<true>(u, basis);
}

FockOperator lift_unitary_serial(const ModeUnitary& u, const FockBasis& basis) {
    return lift_impl<false>(u, basis);
}

Eigen::VectorXcd lift_column(const ModeUnitary& u, const FockBasis& basis,
                             const OccupationVector& input) {
    if (basis.mode_count() != u.dim()) {
        throw std::invalid_argument("lift_column: basis mode count must match unitary dim");
    }
    basis.index_of(input); // validates membership
    const auto cols = repeated_indices(input);
    const double in_fact = occupation_factorial(input);
    const int n_in = static_cast<int>(cols.size());

    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(basis.size());
    for (int row = 0; row < basis.size(); ++row) {
        const auto& s_out = basis.state(row);
        if (total_photons(s_out) != n_in) {
            continue;
        }
        out(row) = amplitude(u, repeated_indices(s_out), cols,
                             std::sqrt(occupation_factorial(s_out) * in_fact));
    }
    return out;
}

} // namespace qrp
