// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qrp/density.hpp"
#include "qrp/lift.hpp"
#include "qrp/rng.hpp"

using namespace qrp;

namespace {

ModeUnitary beamsplitter_50_50() {
    Eigen::MatrixXcd m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return ModeUnitary{m};
}

Eigen::VectorXd sorted_eigenvalues(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

// Random mixed state: normalized Wishart-like G G† on the basis.
DensityMatrix random_density(const FockBasis& basis, std::uint64_t seed) {
    Rng rng(seed);
    const int d = basis.size();
    Eigen::MatrixXcd g(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            g(i, j) = std::complex<double>(rng.normal(), rng.normal());
        }
    }
    Eigen::MatrixXcd w = g * g.adjoint();
    w /= w.trace().real();
    return DensityMatrix{basis, std::move(w)};
}

} // namespace

TEST_SUITE("density") {

TEST_CASE("identity evolution leaves the state unchanged") {
    const auto basis = FockBasis::up_to(2, 2);
    const auto rho = random_density(basis, 1);
    const auto evolved = evolve_density(rho, ModeUnitary{Eigen::MatrixXcd::Identity(2, 2)});
    CHECK((evolved.mat - rho.mat).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single photon splits 50/50 on a beamsplitter") {
    const auto basis = FockBasis::fixed(2, 1);
    const auto rho = pure_density(basis, {1, 0});
    const auto evolved = evolve_density(rho, beamsplitter_50_50());
    // Single-photon populations are |U_i0|^2.
    CHECK(evolved.mat(basis.index_of({1, 0}), basis.index_of({1, 0})).real() ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(evolved.mat(basis.index_of({0, 1}), basis.index_of({0, 1})).real() ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("evolution preserves the spectrum") {
    const auto basis = FockBasis::up_to(3, 2);
    const auto rho = random_density(basis, 2);
    const auto evolved = evolve_density(rho, haar_unitary(3, 3));
    CHECK((sorted_eigenvalues(evolved.mat) - sorted_eigenvalues(rho.mat)).cwiseAbs().maxCoeff() <
          1e-8);
    CHECK(evolved.trace_error() < 1e-10);
    evolved.validate();
}

TEST_CASE("partial trace: keep everything, product state, trace preservation") {
    const auto basis = FockBasis::up_to(2, 2);
    const auto rho = random_density(basis, 4);
    const auto same = partial_trace(rho, {0, 1});
    CHECK((same.mat - rho.mat).cwiseAbs().maxCoeff() < 1e-12);

    const auto pure = pure_density(FockBasis::up_to(2, 1), {1, 0});
    const auto reduced = partial_trace(pure, {0});
    CHECK(reduced.basis.mode_count() == 1);
    CHECK(reduced.mat(reduced.basis.index_of({1}), reduced.basis.index_of({1})).real() ==
          doctest::Approx(1.0));

    const auto big = random_density(FockBasis::fixed(4, 2), 5);
    const auto traced = partial_trace(big, {1, 2});
    CHECK(std::abs(traced.mat.trace().real() - big.mat.trace().real()) < 1e-10);
    CHECK_THROWS_AS(partial_trace(big, {}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(big, {7}), std::out_of_range);
}

TEST_CASE("fixed-total input gives a block-diagonal reduced state") {
    // The mechanism behind the block-diagonal mixed-state preparation: a
    // global state with exactly two photons reduces, on any kept subset, to
    // a state diagonal across kept-photon-number sectors.
    const auto basis = FockBasis::fixed(6, 2);
    for (int rep = 0; rep < 5; ++rep) {
        const auto u6 = embed_unitary(haar_unitary(4, 600 + rep), 6, {2, 3, 4, 5});
        const auto psi = lift_column(u6, basis, {0, 0, 1, 0, 1, 0});
        const auto rho = density_from_amplitudes(basis, psi);
        const auto reduced = partial_trace(rho, {2, 3});
        const auto ranges = reduced.basis.sector_ranges();
        REQUIRE(ranges.size() == 3);
        CHECK(ranges[0].second == 1);
        CHECK(ranges[1].second == 2);
        CHECK(ranges[2].second == 3);
        for (int i = 0; i < reduced.dim(); ++i) {
            for (int j = 0; j < reduced.dim(); ++j) {
                if (total_photons(reduced.basis.state(i)) !=
                    total_photons(reduced.basis.state(j))) {
                    CHECK(std::abs(reduced.mat(i, j)) < 1e-12);
                }
            }
        }
        CHECK(reduced.trace_error() < 1e-10);
    }
}

TEST_CASE("embed_vacuum then trace back is the identity") {
    const auto rho = random_density(FockBasis::up_to(2, 2), 6);
    const auto embedded = embed_vacuum(rho, 4, {2, 3});
    CHECK(embedded.basis.size() == 15);
    CHECK(std::abs(embedded.mat.trace().real() - 1.0) < 1e-12);
    const auto back = partial_trace(embedded, {2, 3});
    CHECK((back.mat - rho.mat).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pnr distribution basics") {
    const auto basis = FockBasis::fixed(2, 2);
    const auto point = pnr_distribution(pure_density(basis, {2, 0}));
    CHECK(point.probabilities(basis.index_of({2, 0})) == doctest::Approx(1.0));
    CHECK(point.probabilities.sum() == doctest::Approx(1.0));

    const auto mixed_basis = FockBasis::fixed(4, 2);
    DensityMatrix mixed{mixed_basis,
                        Eigen::MatrixXcd::Identity(10, 10) / 10.0};
    const auto uniform = pnr_distribution(mixed);
    for (int k = 0; k < 10; ++k) {
        CHECK(uniform.probabilities(k) == doctest::Approx(0.1));
    }

    const auto hom = evolve_density(pure_density(basis, {1, 1}), beamsplitter_50_50());
    const auto dist = pnr_distribution(hom);
    CHECK(dist.probabilities(basis.index_of({1, 1})) < 1e-12);
    CHECK(dist.probabilities(basis.index_of({2, 0})) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(dist.probabilities(basis.index_of({0, 2})) == doctest::Approx(0.5).epsilon(1e-12));

    DensityMatrix bad{basis, Eigen::MatrixXcd::Identity(3, 3) / 3.0};
    bad.mat(0, 0) = -1e-6;
    CHECK_THROWS_AS(pnr_distribution(bad), std::runtime_error);
}

TEST_CASE("postselect filters and renormalizes") {
    const auto basis = FockBasis::up_to(2, 2);
    Eigen::VectorXd probs = Eigen::VectorXd::Zero(basis.size());
    probs(basis.index_of({0, 0})) = 0.5;
    probs(basis.index_of({1, 1})) = 0.25;
    probs(basis.index_of({2, 0})) = 0.25;
    const OutcomeDistribution dist{basis, probs};

    const auto kept = postselect(dist, 2);
    CHECK(kept.probabilities(basis.index_of({1, 1})) == doctest::Approx(0.5));
    CHECK(kept.probabilities(basis.index_of({2, 0})) == doctest::Approx(0.5));
    CHECK(kept.probabilities(basis.index_of({0, 0})) == 0.0);
    CHECK(kept.probabilities.sum() == doctest::Approx(1.0));

    // Lossless fixed-n distribution is a fixed point.
    const auto fixed_basis = FockBasis::fixed(2, 2);
    const auto hom = pnr_distribution(evolve_density(pure_density(fixed_basis, {1, 1}),
                                                     beamsplitter_50_50()));
    const auto unchanged = postselect(hom, 2);
    CHECK((unchanged.probabilities - hom.probabilities).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(postselect(dist, 1), std::runtime_error);
}

TEST_CASE("sample_counts: point mass, determinism, binomial error") {
    const auto basis = FockBasis::fixed(2, 1);
    Eigen::VectorXd point(2);
    point << 1.0, 0.0;
    const OutcomeDistribution dist{basis, point};
    const auto freq = sample_counts(dist, 1000, 5);
    CHECK(freq.probabilities(0) == doctest::Approx(1.0));

    Eigen::VectorXd half(2);
    half << 0.5, 0.5;
    const OutcomeDistribution coin{basis, half};
    const auto a = sample_counts(coin, 1000000, 9);
    const auto b = sample_counts(coin, 1000000, 9);
    CHECK(a.probabilities == b.probabilities);
    // 4 sigma with binomial standard error 0.0005.
    CHECK(std::abs(a.probabilities(0) - 0.5) < 0.002);
    CHECK(a.probabilities.sum() == doctest::Approx(1.0));

    CHECK_THROWS_AS(sample_counts(coin, 0, 1), std::invalid_argument);
}

} // TEST_SUITE
