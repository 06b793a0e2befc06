// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrp/permanent.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <stdexcept>

namespace qrp {

std::complex<double> permanent(const Eigen::Ref<const Eigen::MatrixXcd>& a) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("permanent: matrix must be square");
    }
    const int n = static_cast<int>(a.rows());
    if (n > 20) {
        throw std::invalid_argument("permanent: dimension above desk-scale guard (n <= 20)");
    }
    if (n == 0) {
        return {1.0, 0.0};
    }

    // Ryser: perm(A) = (-1)^n sum_{S != 0} (-1)^|S| prod_i sum_{j in S} A_ij.
    // The Gray-code walk flips one column per step, so the row sums are
    // updated in O(n) per subset.
    std::array<std::complex<double>, 20> row_sums{};
    std::complex<double> total = 0.0;
    std::uint64_t gray = 0;
    const std::uint64_t count = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < count; ++k) {
        const std::uint64_t next_gray = k ^ (k >> 1);
        const std::uint64_t changed = gray ^ next_gray;
        const int col = std::countr_zero(changed);
        if (next_gray & changed) {
            for (int i = 0; i < n; ++i) {
                row_sums[i] += a(i, col);
            }
        } else {
            for (int i = 0; i < n; ++i) {
                row_sums[i] -= a(i, col);
            }
        }
        gray = next_gray;

        std::complex<double> prod = 1.0;
        for (int i = 0; i < n; ++i) {
            prod *= row_sums[i];
        }
        const int bits = std::popcount(gray);
        total += (bits % 2 == 0) ? prod : -prod;
    }
    return (n % 2 == 0) ? total : -total;
}

} // namespace qrp
