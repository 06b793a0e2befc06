// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qrp/density.hpp"
#include "qrp/metrics.hpp"
#include "qrp/unitary.hpp"

namespace qrp::detail {

/// Two-photon PNR features of NOON states through one reservoir: the
/// diagonal of the evolved density matrix on the fixed-2 outcome basis,
/// with the state embedded in the first two modes.
Eigen::MatrixXd noon_feature_matrix(const std::vector<std::pair<NoonState, DensityMatrix>>& data,
                                    int detector_count, const ModeUnitary& reservoir);

} // namespace qrp::detail

namespace qrp::stream {

// Substream tags: every independent work unit draws from
// derive_seed(derive_seed(master, tag), unit_index), so results do not
// depend on scheduling or thread count.
inline constexpr std::uint64_t dataset = 0x01;
inline constexpr std::uint64_t reservoir = 0x02;
inline constexpr std::uint64_t splits = 0x03;
inline constexpr std::uint64_t shots_qrp = 0x04;
inline constexpr std::uint64_t shots_pnr = 0x05;
inline constexpr std::uint64_t hardware = 0x06;
inline constexpr std::uint64_t training = 0x07;
inline constexpr std::uint64_t train_data = 0x08;
inline constexpr std::uint64_t test_data = 0x09;

} // namespace qrp::stream
