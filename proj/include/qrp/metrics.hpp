// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "qrp/density.hpp"

namespace qrp {

/// A two-mode, two-photon state supported on {|2,0>, |0,2>}:
///   rho = n1 |2,0><2,0| + n2 |0,2><0,2|
///       + sigma e^{i phi} |2,0><0,2| + sigma e^{-i phi} |0,2><2,0|.
/// Physical iff n1 + n2 = 1 and |sigma| <= sqrt(n1 n2).
struct NoonState {
    double n1;
    double n2;
    double sigma;
    double phi;
};

/// Throws std::invalid_argument if the NoonState invariants are violated.
void validate_noon(const NoonState& state);

struct BlochVector {
    double x;
    double y;
    double z;

    double norm() const;
};

/// Tr(rho^2).
double purity(const DensityMatrix& rho);

/// -sum_j lambda_j ln lambda_j, natural log, with 0 ln 0 = 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// Entanglement negativity of a two-mode state: embed into the product
/// basis {0..cutoff} x {0..cutoff}, partially transpose the first mode,
/// and sum the magnitudes of the negative eigenvalues. Throws if the state
/// has more than two modes or occupations above the cutoff.
double negativity(const DensityMatrix& rho, int local_cutoff);

/// a = (2 sigma cos phi, 2 sigma sin phi, n1 - n2).
BlochVector noon_to_bloch(const NoonState& state);

/// Inverse of noon_to_bloch; phi is reported in [0, 2 pi) and defined as 0
/// when sigma = 0. Throws if ||a|| > 1 + 1e-9.
NoonState bloch_to_noon(const BlochVector& a);

/// The density matrix of a NoonState on the two-mode, two-photon basis.
DensityMatrix noon_density(const NoonState& state);

struct NoonMetrics {
    double purity;
    double entropy;
    double negativity;
};

/// Closed forms: P = n1^2 + n2^2 + 2 sigma^2,
/// S = ln 2 - (1/2) ln(1 - R^2) + (R/2) ln((1-R)/(1+R)) with
/// R = sqrt((n1-n2)^2 + 4 sigma^2), N = |sigma|. The R -> 1 limit is an
/// exact 0 and R -> 0 evaluates through a series branch.
NoonMetrics analytic_noon_metrics(const NoonState& state);

} // namespace qrp
