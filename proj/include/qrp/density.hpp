// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qrp/fock.hpp"
#include "qrp/unitary.hpp"

namespace qrp {

/// A density matrix over an explicit Fock basis. Hermitian, trace 1,
/// positive semidefinite (within the stated numerical tolerances).
struct DensityMatrix {
    FockBasis basis;
    Eigen::MatrixXcd mat;

    int dim() const { return static_cast<int>(mat.rows()); }
    double trace_error() const { return std::abs(mat.trace().real() - 1.0) + std::abs(mat.trace().imag()); }
    double hermiticity_defect() const { return (mat - mat.adjoint()).cwiseAbs().maxCoeff(); }
    double min_eigenvalue() const;

    /// Throws std::runtime_error if any physicality invariant is violated.
    void validate(double herm_tol = 1e-10, double trace_tol = 1e-8,
                  double eig_tol = 1e-8) const;
};

/// PNR outcome probabilities in canonical basis order.
struct OutcomeDistribution {
    FockBasis basis;
    Eigen::VectorXd probabilities;
};

/// Pure state |occ><occ| on the given basis.
DensityMatrix pure_density(const FockBasis& basis, const OccupationVector& occ);

/// Density matrix of the pure state with the given basis amplitudes.
DensityMatrix density_from_amplitudes(const FockBasis& basis, const Eigen::VectorXcd& psi);

/// rho' = Û rho Û†, with Û the lift of `u` onto rho's basis. Preserves
/// trace, Hermiticity and spectrum.
DensityMatrix evolve_density(const DensityMatrix& rho, const ModeUnitary& u);

/// Traces out all modes except `kept_modes`; the output basis is up-to-n
/// over the kept modes (n the maximum total of the input basis).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& kept_modes);

/// Embeds rho into a larger mode space with vacuum in the added modes.
/// placement[k] is the global index of rho's k-th mode; the output basis
/// has the same sector kind and photon count over `total_modes` modes.
DensityMatrix embed_vacuum(const DensityMatrix& rho, int total_modes,
                           const std::vector<int>& placement);

/// Diagonal of rho in the Fock basis. Entries within -1e-12 of zero are
/// clipped; anything more negative signals an unphysical input and throws.
OutcomeDistribution pnr_distribution(const DensityMatrix& rho);

/// Keeps only outcomes with the requested total photon number and
/// renormalizes. Throws if the retained probability is below 1e-12.
OutcomeDistribution postselect(const OutcomeDistribution& dist, int total_photons);

/// Empirical frequencies of a `shots`-sample multinomial draw.
/// Deterministic per seed.
OutcomeDistribution sample_counts(const OutcomeDistribution& dist, std::int64_t shots,
                                  std::uint64_t seed);

} // namespace qrp
