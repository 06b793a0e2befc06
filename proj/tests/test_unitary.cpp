// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "qrp/rng.hpp"
#include "qrp/unitary.hpp"

using namespace qrp;

TEST_SUITE("unitary") {

TEST_CASE("dim-1 Haar draw is a unimodular scalar") {
    const auto u = haar_unitary(1, 99);
    CHECK(std::abs(std::abs(u.mat(0, 0)) - 1.0) < 1e-12);
}

TEST_CASE("Haar draws are deterministic per seed and unitary") {
    const auto a = haar_unitary(4, 7);
    const auto b = haar_unitary(4, 7);
    CHECK(a.mat == b.mat);
    CHECK(a.unitarity_defect() < 1e-12);
    CHECK(haar_unitary(4, 8).mat != a.mat);
    CHECK_THROWS_AS(haar_unitary(0, 1), std::invalid_argument);
}

TEST_CASE("Haar first moment: E|U_00|^2 = 1/m by Monte Carlo") {
    const int samples = 10000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int s = 0; s < samples; ++s) {
        const auto u = haar_unitary(4, 50000 + s);
        const double v = std::norm(u.mat(0, 0));
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / samples;
    const double var = sum_sq / samples - mean * mean;
    const double stderr_mean = std::sqrt(var / samples);
    CHECK(std::abs(mean - 0.25) < 3.0 * stderr_mean);
}

TEST_CASE("zero perturbation returns the input exactly") {
    const auto u = haar_unitary(4, 3);
    const auto same = perturb_unitary(u, 0.0, 123);
    CHECK(same.mat == u.mat);
}

TEST_CASE("perturbed matrices are re-unitarized") {
    const auto u = haar_unitary(4, 11);
    const auto p = perturb_unitary(u, 0.075, 17);
    CHECK(p.unitarity_defect() < 1e-10);
    CHECK((p.mat - u.mat).norm() > 1e-3); // actually moved
}

TEST_CASE("perturbation magnitude follows first-order theory") {
    // To first order the polar projection keeps the skew component of the
    // elementwise noise, giving E||U' - U||_F^2 = eps^2 m^2.
    const int m = 4;
    const int trials = 1000;
    auto mean_shift = [&](double eps) {
        double total = 0.0;
        for (int t = 0; t < trials; ++t) {
            const auto u = haar_unitary(m, 900 + t);
            total += (perturb_unitary(u, eps, 7000 + t).mat - u.mat).norm();
        }
        return total / trials;
    };
    const double eps = 1e-4;
    const double shift = mean_shift(eps);
    CHECK(shift == doctest::Approx(eps * m).epsilon(0.05));
    // And the shift scales linearly in eps.
    CHECK(mean_shift(2.0 * eps) / shift == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("embed_unitary places the block and keeps identity elsewhere") {
    const auto u = haar_unitary(2, 5);
    const auto big = embed_unitary(u, 4, {1, 2});
    CHECK(big.dim() == 4);
    CHECK(big.mat(0, 0) == std::complex<double>(1.0, 0.0));
    CHECK(big.mat(3, 3) == std::complex<double>(1.0, 0.0));
    CHECK(big.mat(1, 1) == u.mat(0, 0));
    CHECK(big.mat(2, 1) == u.mat(1, 0));
    CHECK(big.unitarity_defect() < 1e-12);
    CHECK_THROWS_AS(embed_unitary(u, 4, {0, 4}), std::out_of_range);
    CHECK_THROWS_AS(embed_unitary(u, 4, {1, 1}), std::invalid_argument);
}

} // TEST_SUITE
