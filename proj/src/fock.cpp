// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrp/fock.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace qrp {

int total_photons(const OccupationVector& occ) {
    return std::accumulate(occ.begin(), occ.end(), 0);
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return result;
}

namespace {

// Appends all occupations of `photons` photons over modes [mode, m) to `out`,
// ascending lexicographically (leading mode count is the major key).
void enumerate_sector(int m, int photons, int mode, OccupationVector& scratch,
                      std::vector<OccupationVector>& out) {
    if (mode == m - 1) {
        scratch[mode] = photons;
        out.push_back(scratch);
        return;
    }
    for (int c = 0; c <= photons; ++c) {
        scratch[mode] = c;
        enumerate_sector(m, photons - c, mode + 1, scratch, out);
    }
}

std::vector<OccupationVector> sector_states(int mode_count, int photons) {
    std::vector<OccupationVector> states;
    states.reserve(binomial(photons + mode_count - 1, photons));
    OccupationVector scratch(mode_count, 0);
    enumerate_sector(mode_count, photons, 0, scratch, states);
    return states;
}

} // namespace

FockBasis::FockBasis(int mode_count, int photons, Sector sector,
                     std::vector<OccupationVector> states)
    : mode_count_(mode_count), photons_(photons), sector_(sector),
      states_(std::move(states)) {
    index_.reserve(states_.size());
    for (int k = 0; k < static_cast<int>(states_.size()); ++k) {
        index_.emplace(states_[k], k);
    }
}

FockBasis FockBasis::fixed(int mode_count, int photons) {
    if (mode_count < 1) {
        throw std::invalid_argument("FockBasis: mode_count must be >= 1");
    }
    if (photons < 0) {
        throw std::invalid_argument("FockBasis: photon number must be >= 0");
    }
    return FockBasis(mode_count, photons, Sector::Fixed, sector_states(mode_count, photons));
}

FockBasis FockBasis::up_to(int mode_count, int max_photons) {
    if (mode_count < 1) {
        throw std::invalid_argument("FockBasis: mode_count must be >= 1");
    }
    if (max_photons < 0) {
        throw std::invalid_argument("FockBasis: photon number must be >= 0");
    }
    std::vector<OccupationVector> states;
    for (int n = 0; n <= max_photons; ++n) {
        auto sector = sector_states(mode_count, n);
        states.insert(states.end(), sector.begin(), sector.end());
    }
    return FockBasis(mode_count, max_photons, Sector::UpTo, std::move(states));
}

int FockBasis::index_of(const OccupationVector& occ) const {
    auto it = index_.find(occ);
    if (it == index_.end()) {
        std::string repr = "[";
        for (std::size_t i = 0; i < occ.size(); ++i) {
            repr += (i ? "," : "") + std::to_string(occ[i]);
        }
        throw std::out_of_range("FockBasis: occupation " + repr + "] not in basis");
    }
    return it->second;
}

std::vector<std::pair<int, int>> FockBasis::sector_ranges() const {
    std::vector<std::pair<int, int>> ranges;
    int offset = 0;
    while (offset < size()) {
        const int total = total_photons(states_[offset]);
        int end = offset;
        while (end < size() && total_photons(states_[end]) == total) {
            ++end;
        }
        ranges.emplace_back(offset, end - offset);
        offset = end;
    }
    return ranges;
}

std::pair<OccupationVector, OccupationVector>
split_occupation(const OccupationVector& occ, const std::vector<int>& kept_modes) {
    const int m = static_cast<int>(occ.size());
    std::vector<bool> kept(m, false);
    OccupationVector kept_part;
    kept_part.reserve(kept_modes.size());
    for (int mode : kept_modes) {
        if (mode < 0 || mode >= m) {
            throw std::out_of_range("split_occupation: mode index " + std::to_string(mode) +
                                    " out of range for " + std::to_string(m) + " modes");
        }
        if (kept[mode]) {
            throw std::invalid_argument("split_occupation: duplicate mode index " +
                                        std::to_string(mode));
        }
        kept[mode] = true;
        kept_part.push_back(occ[mode]);
    }
    OccupationVector rest;
    rest.reserve(m - kept_modes.size());
    for (int mode = 0; mode < m; ++mode) {
        if (!kept[mode]) {
            rest.push_back(occ[mode]);
        }
    }
    return {std::move(kept_part), std::move(rest)};
}

} // namespace qrp
