// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qrp {

/// Exact matrix permanent via Ryser's formula with Gray-code subset
/// iteration, O(2^n * n). Throws on non-square input or n > 20.
/// The permanent of the empty 0x0 matrix is 1. Allocation-free so the
/// lift kernel can evaluate millions of elements across threads.
std::complex<double> permanent(const Eigen::Ref<const Eigen::MatrixXcd>& a);

} // namespace qrp
