// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "qrp/lift.hpp"
#include "qrp/rng.hpp"
#include "qrp/tomography.hpp"

using namespace qrp;

namespace {

Eigen::MatrixXd random_real(int rows, int cols, std::uint64_t seed) {
    Rng rng(seed);
    Eigen::MatrixXd m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = rng.normal();
        }
    }
    return m;
}

// Random Hermitian trace-1 matrix supported on the declared blocks.
DensityMatrix random_blocked_state(const ParamStructure& structure, std::uint64_t seed) {
    Rng rng(seed);
    const int d = structure.basis().size();
    Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(d, d);
    double remaining = 1.0;
    for (const auto& [offset, size] : structure.blocks()) {
        Eigen::MatrixXcd g(size, size);
        for (int i = 0; i < size; ++i) {
            for (int j = 0; j < size; ++j) {
                g(i, j) = std::complex<double>(rng.normal(), rng.normal());
            }
        }
        Eigen::MatrixXcd w = g * g.adjoint();
        const double weight = (offset + size == d) ? remaining : rng.uniform() * remaining;
        remaining -= weight;
        mat.block(offset, offset, size, size) = w * (weight / w.trace().real());
    }
    return DensityMatrix{structure.basis(), std::move(mat)};
}

// Independent ridge oracle: SVD of the centered design matrix,
// W' = V diag(s / (s^2 + alpha)) U' Yc.
RidgeModel ridge_fit_svd_oracle(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                                double alpha) {
    const Eigen::RowVectorXd x_mean = x.colwise().mean();
    const Eigen::RowVectorXd y_mean = y.colwise().mean();
    const Eigen::MatrixXd xc = x.rowwise() - x_mean;
    const Eigen::MatrixXd yc = y.rowwise() - y_mean;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(xc, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Eigen::VectorXd shrink = svd.singularValues();
    for (int k = 0; k < shrink.size(); ++k) {
        shrink(k) = shrink(k) / (shrink(k) * shrink(k) + alpha);
    }
    const Eigen::MatrixXd w_t =
        svd.matrixV() * shrink.asDiagonal() * svd.matrixU().transpose() * yc;
    RidgeModel model;
    model.alpha = alpha;
    model.weights = w_t.transpose();
    model.intercept = y_mean.transpose() - model.weights * x_mean.transpose();
    return model;
}

} // namespace

TEST_SUITE("tomography") {

TEST_CASE("parameter counts follow the block structure") {
    const auto two_mode = ParamStructure::blocked(FockBasis::up_to(2, 2));
    CHECK(two_mode.param_count() == 13);

    const auto three_mode = ParamStructure::blocked(FockBasis::up_to(3, 2));
    CHECK(three_mode.param_count() == 45);

    const auto dense2 = ParamStructure::dense(FockBasis::fixed(2, 1));
    CHECK(dense2.param_count() == 3);
}

TEST_CASE("pack of the maximally mixed qubit") {
    const auto basis = FockBasis::fixed(2, 1);
    const auto structure = ParamStructure::dense(basis);
    const DensityMatrix rho{basis, Eigen::MatrixXcd::Identity(2, 2) / 2.0};
    const auto packed = pack_params(rho, structure);
    REQUIRE(packed.size() == 3);
    CHECK(packed(0) == doctest::Approx(0.5));
    CHECK(packed(1) == doctest::Approx(0.0));
    CHECK(packed(2) == doctest::Approx(0.0));
}

TEST_CASE("pack/unpack/hermitize round-trips on blocked states") {
    const auto structure = ParamStructure::blocked(FockBasis::up_to(2, 2));
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        const auto rho = random_blocked_state(structure, seed);
        const auto packed = pack_params(rho, structure);
        REQUIRE(packed.size() == 13);
        const auto raw = unpack_params(packed, structure);
        const auto recovered = hermitize(raw);
        CHECK((recovered - rho.mat).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("unpack fills the trace-determined diagonal") {
    const auto structure = ParamStructure::dense(FockBasis::fixed(2, 1));
    const auto zero = unpack_params(Eigen::VectorXd::Zero(3), structure);
    CHECK(zero(0, 0) == std::complex<double>(0.0, 0.0));
    CHECK(zero(1, 1) == std::complex<double>(1.0, 0.0));

    Eigen::VectorXd overfull(3);
    overfull << 1.2, 0.0, 0.0;
    const auto raw = unpack_params(overfull, structure);
    CHECK(raw(1, 1).real() == doctest::Approx(-0.2));

    CHECK_THROWS_AS(unpack_params(Eigen::VectorXd::Zero(2), structure), std::invalid_argument);
}

TEST_CASE("hermitize matches the stated transformation") {
    Eigen::MatrixXcd upper(2, 2);
    upper << std::complex<double>(0.5, 0.0), std::complex<double>(0.1, 0.2),
        std::complex<double>(0.0, 0.0), std::complex<double>(0.5, 0.0);
    const auto h = hermitize(upper);
    CHECK(h(0, 1) == std::complex<double>(0.1, 0.2));
    CHECK(h(1, 0) == std::complex<double>(0.1, -0.2));
    CHECK(h(0, 0) == std::complex<double>(0.5, 0.0));

    // The formula is a fixed point on real-diagonal matrices; a general
    // Hermitian input keeps its diagonal and stays Hermitian.
    Eigen::MatrixXcd diag = Eigen::MatrixXcd::Zero(2, 2);
    diag(0, 0) = 0.7;
    diag(1, 1) = 0.3;
    CHECK((hermitize(diag) - diag).cwiseAbs().maxCoeff() < 1e-15);
    Eigen::MatrixXcd herm(2, 2);
    herm << std::complex<double>(0.7, 0.0), std::complex<double>(0.1, -0.3),
        std::complex<double>(0.1, 0.3), std::complex<double>(0.3, 0.0);
    const auto h2 = hermitize(herm);
    CHECK((h2 - h2.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(h2(0, 0) == herm(0, 0));
    CHECK(h2(1, 1) == herm(1, 1));

    CHECK((hermitize(Eigen::MatrixXcd::Zero(3, 3))).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(hermitize(Eigen::MatrixXcd::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("project_physical: fixed point, clipping, oracle comparison") {
    const auto basis = FockBasis::fixed(3, 1);
    const auto structure = ParamStructure::dense(basis);
    const auto rho = random_blocked_state(structure, 10);
    const auto projected = project_physical(rho.mat, basis);
    CHECK((projected.mat - rho.mat).cwiseAbs().maxCoeff() < 1e-10);

    Eigen::MatrixXcd indefinite = Eigen::MatrixXcd::Zero(3, 3);
    indefinite(0, 0) = 0.6;
    indefinite(1, 1) = 0.6;
    indefinite(2, 2) = -0.2;
    const auto clipped = project_physical(indefinite, basis);
    CHECK(clipped.mat(0, 0).real() == doctest::Approx(0.5));
    CHECK(clipped.mat(1, 1).real() == doctest::Approx(0.5));
    CHECK(std::abs(clipped.mat(2, 2)) < 1e-14);

    // Independent oracle: clip-and-renormalize the spectrum from a second
    // eigendecomposition route (ComplexEigenSolver on the Hermitian input).
    Rng rng(11);
    Eigen::MatrixXcd g(3, 3);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            g(i, j) = std::complex<double>(rng.normal(), rng.normal());
        }
    }
    Eigen::MatrixXcd herm = (g + g.adjoint()) / 2.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> general(herm);
    Eigen::VectorXd lambda = general.eigenvalues().real();
    Eigen::VectorXd clipped_lambda = lambda.cwiseMax(0.0);
    clipped_lambda /= clipped_lambda.sum();
    const Eigen::MatrixXcd oracle = general.eigenvectors() *
                                    clipped_lambda.asDiagonal().toDenseMatrix().cast<std::complex<double>>() *
                                    general.eigenvectors().adjoint();
    const auto ours = project_physical(herm, basis);
    CHECK((ours.mat - oracle).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(ours.trace_error() < 1e-10);
    CHECK(ours.min_eigenvalue() > -1e-12);

    // Idempotence.
    const auto twice = project_physical(ours.mat, basis);
    CHECK((twice.mat - ours.mat).cwiseAbs().maxCoeff() < 1e-10);

    // Degenerate input falls back to the maximally mixed state.
    bool degenerate = false;
    const auto fallback = project_physical(-Eigen::MatrixXcd::Identity(3, 3), basis, &degenerate);
    CHECK(degenerate);
    CHECK(fallback.mat(0, 0).real() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("ridge recovers an exact linear relation") {
    const int n = 50;
    Eigen::MatrixXd x = random_real(n, 1, 20);
    Eigen::MatrixXd y = x;
    const auto model = ridge_fit(x, y, 1e-10);
    CHECK(model.weights(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(model.intercept(0)) < 1e-6);

    const Eigen::VectorXd pred = ridge_predict(model, x.row(7).transpose());
    CHECK(pred(0) == doctest::Approx(y(7, 0)).epsilon(1e-4));
}

TEST_CASE("constant targets produce zero weights and the constant intercept") {
    const int n = 30;
    Eigen::MatrixXd x = random_real(n, 4, 21);
    Eigen::MatrixXd y = Eigen::MatrixXd::Constant(n, 1, 0.37);
    const auto model = ridge_fit(x, y, 1e-3);
    CHECK(model.weights.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(model.intercept(0) == doctest::Approx(0.37));
}

TEST_CASE("ridge matches the SVD oracle and recovers planted weights") {
    const int n = 200;
    const int p = 6;
    const int t = 3;
    const Eigen::MatrixXd x = random_real(n, p, 22);
    const Eigen::MatrixXd w0 = random_real(t, p, 23);
    const Eigen::VectorXd b0 = random_real(t, 1, 24).col(0);
    const Eigen::MatrixXd y = (x * w0.transpose()).rowwise() + b0.transpose();

    const auto model = ridge_fit(x, y, 1e-8);
    CHECK((model.weights - w0).cwiseAbs().maxCoeff() < 1e-4);
    CHECK((model.intercept - b0).cwiseAbs().maxCoeff() < 1e-4);

    const auto oracle = ridge_fit_svd_oracle(x, y, 1e-3);
    const auto ours = ridge_fit(x, y, 1e-3);
    CHECK((ours.weights - oracle.weights).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((ours.intercept - oracle.intercept).cwiseAbs().maxCoeff() < 1e-9);

    const Eigen::MatrixXd batch = ridge_predict_batch(ours, x);
    CHECK((batch.row(0).transpose() - ridge_predict(ours, x.row(0).transpose()))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
}

TEST_CASE("zero weights predict the intercept") {
    RidgeModel model;
    model.weights = Eigen::MatrixXd::Zero(2, 3);
    model.intercept = Eigen::VectorXd::Constant(2, 1.5);
    const auto pred = ridge_predict(model, Eigen::VectorXd::Ones(3));
    CHECK(pred(0) == 1.5);
    CHECK(pred(1) == 1.5);
    CHECK_THROWS_AS(ridge_predict(model, Eigen::VectorXd::Ones(4)), std::invalid_argument);
}

TEST_CASE("alpha = 0 on a singular design is rejected") {
    Eigen::MatrixXd x(4, 2);
    x << 1, 2, 2, 4, 3, 6, 4, 8; // second column is 2x the first
    Eigen::MatrixXd y = Eigen::MatrixXd::Ones(4, 1);
    CHECK_THROWS_AS(ridge_fit(x, y, 0.0), std::invalid_argument);
    CHECK_NOTHROW(ridge_fit(x, y, 1e-6));
}

TEST_CASE("fidelity: self, orthogonal, pure-state reduction") {
    const auto basis = FockBasis::fixed(2, 2);
    const auto structure = ParamStructure::dense(basis);
    const auto rho = random_blocked_state(structure, 30);
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-8));

    const auto a = pure_density(basis, {0, 2});
    const auto b = pure_density(basis, {2, 0});
    CHECK(fidelity(a, b) < 1e-12);

    // Pure-vs-mixed reduces to <psi|rho|psi>.
    Rng rng(31);
    for (int rep = 0; rep < 100; ++rep) {
        Eigen::VectorXcd psi(basis.size());
        for (int k = 0; k < basis.size(); ++k) {
            psi(k) = std::complex<double>(rng.normal(), rng.normal());
        }
        psi.normalize();
        const auto pure = density_from_amplitudes(basis, psi);
        const auto mixed = random_blocked_state(structure, 1000 + rep);
        const double expected = (psi.adjoint() * mixed.mat * psi)(0).real();
        CHECK(fidelity(pure, mixed) == doctest::Approx(expected).epsilon(1e-8));
        // Symmetry.
        CHECK(fidelity(mixed, pure) == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("fidelity is invariant under a common lifted rotation") {
    const auto basis = FockBasis::fixed(2, 2);
    const auto structure = ParamStructure::dense(basis);
    const auto rho_a = random_blocked_state(structure, 40);
    const auto rho_b = random_blocked_state(structure, 41);
    const double before = fidelity(rho_a, rho_b);
    const auto u = haar_unitary(2, 42);
    const double after = fidelity(evolve_density(rho_a, u), evolve_density(rho_b, u));
    CHECK(after == doctest::Approx(before).epsilon(1e-8));
}

TEST_CASE("fidelity input guards") {
    const auto basis2 = FockBasis::fixed(2, 1);
    const auto basis3 = FockBasis::fixed(3, 1);
    const DensityMatrix a{basis2, Eigen::MatrixXcd::Identity(2, 2) / 2.0};
    const DensityMatrix b{basis3, Eigen::MatrixXcd::Identity(3, 3) / 3.0};
    CHECK_THROWS_AS(fidelity(a, b), std::invalid_argument);

    DensityMatrix bad{basis2, Eigen::MatrixXcd::Identity(2, 2)};
    bad.mat(0, 0) = 1.5;
    bad.mat(1, 1) = -0.5;
    CHECK_THROWS_AS(fidelity(bad, a), std::invalid_argument);
}

} // TEST_SUITE
