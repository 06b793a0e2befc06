// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrp/density.hpp"

#include <algorithm>
#include <stdexcept>

#include "qrp/lift.hpp"
#include "qrp/rng.hpp"

namespace qrp {

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mat, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void DensityMatrix::validate(double herm_tol, double trace_tol, double eig_tol) const {
    if (hermiticity_defect() > herm_tol) {
        throw std::runtime_error("DensityMatrix: not Hermitian within tolerance");
    }
    if (trace_error() > trace_tol) {
        throw std::runtime_error("DensityMatrix: trace differs from 1 beyond tolerance");
    }
    if (min_eigenvalue() < -eig_tol) {
        throw std::runtime_error("DensityMatrix: negative eigenvalue beyond tolerance");
    }
}

DensityMatrix pure_density(const FockBasis& basis, const OccupationVector& occ) {
    const int k = basis.index_of(occ);
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
    mat(k, k) = 1.0;
    return DensityMatrix{basis, std::move(mat)};
}

DensityMatrix density_from_amplitudes(const FockBasis& basis, const Eigen::VectorXcd& psi) {
    if (psi.size() != basis.size()) {
        throw std::invalid_argument("density_from_amplitudes: amplitude length mismatch");
    }
    return DensityMatrix{basis, psi * psi.adjoint()};
}

DensityMatrix evolve_density(const DensityMatrix& rho, const ModeUnitary& u) {
    if (rho.basis.mode_count() != u.dim()) {
        throw std::invalid_argument("evolve_density: mode count mismatch");
    }
    const FockOperator lifted = lift_unitary(u, rho.basis);
    return DensityMatrix{rho.basis, lifted.mat * rho.mat * lifted.mat.adjoint()};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& kept_modes) {
    if (kept_modes.empty()) {
        throw std::invalid_argument("partial_trace: kept mode set must be non-empty");
    }
    const FockBasis out_basis =
        FockBasis::up_to(static_cast<int>(kept_modes.size()), rho.basis.photons());
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_basis.size(), out_basis.size());
    const int d = rho.basis.size();
    for (int i = 0; i < d; ++i) {
        const auto [kept_i, rest_i] = split_occupation(rho.basis.state(i), kept_modes);
        const int row = out_basis.index_of(kept_i);
        for (int j = 0; j < d; ++j) {
            const auto [kept_j, rest_j] = split_occupation(rho.basis.state(j), kept_modes);
            if (rest_i != rest_j) {
                continue;
            }
            out(row, out_basis.index_of(kept_j)) += rho.mat(i, j);
        }
    }
    return DensityMatrix{out_basis, std::move(out)};
}

DensityMatrix embed_vacuum(const DensityMatrix& rho, int total_modes,
                           const std::vector<int>& placement) {
    if (static_cast<int>(placement.size()) != rho.basis.mode_count()) {
        throw std::invalid_argument("embed_vacuum: placement size must match state modes");
    }
    const FockBasis out_basis = (rho.basis.sector() == FockBasis::Sector::Fixed)
                                    ? FockBasis::fixed(total_modes, rho.basis.photons())
                                    : FockBasis::up_to(total_modes, rho.basis.photons());
    std::vector<int> map(rho.basis.size());
    for (int k = 0; k < rho.basis.size(); ++k) {
        OccupationVector occ(total_modes, 0);
        const auto& small = rho.basis.state(k);
        for (int mode = 0; mode < rho.basis.mode_count(); ++mode) {
            const int target = placement[mode];
            if (target < 0 || target >= total_modes) {
                throw std::out_of_range("embed_vacuum: placement index out of range");
            }
            occ[target] = small[mode];
        }
        map[k] = out_basis.index_of(occ);
    }
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_basis.size(), out_basis.size());
    for (int i = 0; i < rho.basis.size(); ++i) {
        for (int j = 0; j < rho.basis.size(); ++j) {
            out(map[i], map[j]) = rho.mat(i, j);
        }
    }
    return DensityMatrix{out_basis, std::move(out)};
}

OutcomeDistribution pnr_distribution(const DensityMatrix& rho) {
    Eigen::VectorXd probs(rho.dim());
    for (int k = 0; k < rho.dim(); ++k) {
        const double p = rho.mat(k, k).real();
        if (p < -1e-12) {
            throw std::runtime_error("pnr_distribution: negative diagonal entry, unphysical state");
        }
        probs(k) = std::max(p, 0.0);
    }
    return OutcomeDistribution{rho.basis, std::move(probs)};
}

OutcomeDistribution postselect(const OutcomeDistribution& dist, int total) {
    Eigen::VectorXd probs = Eigen::VectorXd::Zero(dist.probabilities.size());
    double retained = 0.0;
    for (int k = 0; k < dist.basis.size(); ++k) {
        if (total_photons(dist.basis.state(k)) == total) {
            probs(k) = dist.probabilities(k);
            retained += probs(k);
        }
    }
    if (retained < 1e-12) {
        throw std::runtime_error("postselect: no probability mass at the requested photon number");
    }
    probs /= retained;
    return OutcomeDistribution{dist.basis, std::move(probs)};
}

OutcomeDistribution sample_counts(const OutcomeDistribution& dist, std::int64_t shots,
                                  std::uint64_t seed) {
    if (shots < 1) {
        throw std::invalid_argument("sample_counts: shots must be >= 1");
    }
    const int d = static_cast<int>(dist.probabilities.size());
    std::vector<double> cdf(d);
    double running = 0.0;
    for (int k = 0; k < d; ++k) {
        running += std::max(dist.probabilities(k), 0.0);
        cdf[k] = running;
    }
    Rng rng(seed);
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(d);
    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * running;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const int k = std::min(static_cast<int>(it - cdf.begin()), d - 1);
        counts(k) += 1.0;
    }
    counts /= static_cast<double>(shots);
    return OutcomeDistribution{dist.basis, std::move(counts)};
}

} // namespace qrp
