// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include "qrp/fock.hpp"
#include "qrp/unitary.hpp"

namespace qrp {

/// A mode unitary represented on a multi-photon Fock basis. Passive linear
/// optics conserves total photon number, so the matrix is block-diagonal
/// across photon-number sectors and each sector block is unitary.
struct FockOperator {
    FockBasis basis;
    Eigen::MatrixXcd mat;
};

/// Lifts a mode unitary to the given Fock basis:
///   <s_out|Û|s_in> = perm(U[s_out, s_in]) / sqrt(prod s_out_i! * prod s_in_j!)
/// where U[s_out, s_in] repeats row i s_out_i times and column j s_in_j
/// times. Elements between different photon-number sectors are exactly 0.
/// Matrix elements are independent, so rows are computed in parallel;
/// the result is bit-identical to the serial reference for any thread count.
FockOperator lift_unitary(const ModeUnitary& u, const FockBasis& basis);

/// Single-threaded reference implementation, kept for correctness testing
/// and benchmarking against the parallel kernel.
FockOperator lift_unitary_serial(const ModeUnitary& u, const FockBasis& basis);

/// One column of the lifted unitary: the output-state amplitudes of Û|s_in>.
Eigen::VectorXcd lift_column(const ModeUnitary& u, const FockBasis& basis,
                             const OccupationVector& input);

} // namespace qrp
