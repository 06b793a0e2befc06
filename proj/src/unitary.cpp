// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrp/unitary.hpp"

#include <stdexcept>
#include <vector>

#include "qrp/rng.hpp"

namespace qrp {

double ModeUnitary::unitarity_defect() const {
    const Eigen::MatrixXcd gram = mat.adjoint() * mat;
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(mat.rows(), mat.cols());
    return (gram - eye).cwiseAbs().maxCoeff();
}

ModeUnitary haar_unitary(int dim, std::uint64_t seed) {
    if (dim < 1) {
        throw std::invalid_argument("haar_unitary: dim must be >= 1");
    }
    Rng rng(seed);
    Eigen::MatrixXcd g(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            g(i, j) = std::complex<double>(rng.normal(), rng.normal());
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j) {
        const std::complex<double> d = r(j, j);
        const double mag = std::abs(d);
        q.col(j) *= (mag > 0.0) ? d / mag : 1.0;
    }
    return ModeUnitary{std::move(q)};
}

ModeUnitary perturb_unitary(const ModeUnitary& u, double epsilon, std::uint64_t seed) {
    if (epsilon < 0.0) {
        throw std::invalid_argument("perturb_unitary: epsilon must be >= 0");
    }
    if (epsilon == 0.0) {
        return u;
    }
    Rng rng(seed);
    const int m = u.dim();
    Eigen::MatrixXcd noisy = u.mat;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            noisy(i, j) += epsilon * std::complex<double>(rng.normal(), rng.normal());
        }
    }
    // Nearest unitary in Frobenius norm: the unitary factor of the polar
    // decomposition, W = A (A†A)^{-1/2}, computed via SVD.
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(noisy, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return ModeUnitary{svd.matrixU() * svd.matrixV().adjoint()};
}

ModeUnitary embed_unitary(const ModeUnitary& u, int total_modes,
                          const std::vector<int>& placement) {
    if (static_cast<int>(placement.size()) != u.dim()) {
        throw std::invalid_argument("embed_unitary: placement size must match unitary dim");
    }
    std::vector<bool> used(total_modes, false);
    for (int mode : placement) {
        if (mode < 0 || mode >= total_modes) {
            throw std::out_of_range("embed_unitary: placement index out of range");
        }
        if (used[mode]) {
            throw std::invalid_argument("embed_unitary: duplicate placement index");
        }
        used[mode] = true;
    }
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Identity(total_modes, total_modes);
    for (int a = 0; a < u.dim(); ++a) {
        for (int b = 0; b < u.dim(); ++b) {
            big(placement[a], placement[b]) = u.mat(a, b);
        }
    }
    return ModeUnitary{std::move(big)};
}

} // namespace qrp
