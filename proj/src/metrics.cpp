// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrp/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace qrp {

void validate_noon(const NoonState& state) {
    if (state.n1 < -1e-12 || state.n2 < -1e-12) {
        throw std::invalid_argument("NoonState: populations must be non-negative");
    }
    if (std::abs(state.n1 + state.n2 - 1.0) > 1e-12) {
        throw std::invalid_argument("NoonState: populations must sum to 1");
    }
    if (std::abs(state.sigma) > std::sqrt(std::max(state.n1 * state.n2, 0.0)) + 1e-12) {
        throw std::invalid_argument("NoonState: coherence exceeds sqrt(n1 n2)");
    }
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

double purity(const DensityMatrix& rho) {
    return (rho.mat * rho.mat).trace().real();
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.mat, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (int k = 0; k < solver.eigenvalues().size(); ++k) {
        const double lambda = solver.eigenvalues()(k);
        if (lambda > 0.0) {
            s -= lambda * std::log(lambda);
        }
    }
    return s;
}

double negativity(const DensityMatrix& rho, int local_cutoff) {
    if (rho.basis.mode_count() != 2) {
        throw std::invalid_argument("negativity: state must live on exactly two modes");
    }
    const int c = local_cutoff + 1;
    Eigen::MatrixXcd product = Eigen::MatrixXcd::Zero(c * c, c * c);
    for (int i = 0; i < rho.dim(); ++i) {
        const auto& a = rho.basis.state(i);
        if (a[0] > local_cutoff || a[1] > local_cutoff) {
            throw std::invalid_argument("negativity: occupation exceeds the local cutoff");
        }
        for (int j = 0; j < rho.dim(); ++j) {
            const auto& b = rho.basis.state(j);
            product(a[0] * c + a[1], b[0] * c + b[1]) = rho.mat(i, j);
        }
    }
    // Partial transpose on mode 1: <n1,n2|rho^G|n1',n2'> = <n1',n2|rho|n1,n2'>.
    Eigen::MatrixXcd pt(c * c, c * c);
    for (int n1 = 0; n1 < c; ++n1) {
        for (int n2 = 0; n2 < c; ++n2) {
            for (int m1 = 0; m1 < c; ++m1) {
                for (int m2 = 0; m2 < c; ++m2) {
                    pt(n1 * c + n2, m1 * c + m2) = product(m1 * c + n2, n1 * c + m2);
                }
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pt, Eigen::EigenvaluesOnly);
    double neg = 0.0;
    for (int k = 0; k < solver.eigenvalues().size(); ++k) {
        const double eta = solver.eigenvalues()(k);
        neg += (std::abs(eta) - eta) / 2.0;
    }
    return neg;
}

BlochVector noon_to_bloch(const NoonState& state) {
    return BlochVector{2.0 * state.sigma * std::cos(state.phi),
                       2.0 * state.sigma * std::sin(state.phi), state.n1 - state.n2};
}

NoonState bloch_to_noon(const BlochVector& a) {
    if (a.norm() > 1.0 + 1e-9) {
        throw std::invalid_argument("bloch_to_noon: Bloch vector outside the unit ball");
    }
    const double sigma = 0.5 * std::hypot(a.x, a.y);
    double phi = (sigma > 0.0) ? std::atan2(a.y, a.x) : 0.0;
    if (phi < 0.0) {
        phi += 2.0 * M_PI;
    }
    return NoonState{(1.0 + a.z) / 2.0, (1.0 - a.z) / 2.0, sigma, phi};
}

DensityMatrix noon_density(const NoonState& state) {
    const FockBasis basis = FockBasis::fixed(2, 2); // [0,2], [1,1], [2,0]
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(3, 3);
    const int i20 = basis.index_of({2, 0});
    const int i02 = basis.index_of({0, 2});
    mat(i20, i20) = state.n1;
    mat(i02, i02) = state.n2;
    const std::complex<double> coherence =
        state.sigma * std::exp(std::complex<double>(0.0, state.phi));
    mat(i20, i02) = coherence;
    mat(i02, i20) = std::conj(coherence);
    return DensityMatrix{basis, std::move(mat)};
}

NoonMetrics analytic_noon_metrics(const NoonState& state) {
    const double p = state.n1 * state.n1 + state.n2 * state.n2 + 2.0 * state.sigma * state.sigma;
    const double r2 = (state.n1 - state.n2) * (state.n1 - state.n2) +
                      4.0 * state.sigma * state.sigma;
    const double r = std::sqrt(r2);
    double s;
    if (1.0 - r < 1e-12) {
        s = 0.0; // pure state: removable 0 ln 0 singularity
    } else if (r < 1e-6) {
        s = std::log(2.0) - r2 / 2.0 - r2 * r2 / 12.0;
    } else {
        s = std::log(2.0) - 0.5 * std::log(1.0 - r2) + (r / 2.0) * std::log((1.0 - r) / (1.0 + r));
    }
    return NoonMetrics{p, s, std::abs(state.sigma)};
}

} // namespace qrp
