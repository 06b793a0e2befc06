// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qrp {

/// Photon count per optical mode. Value type with structural equality;
/// the canonical Fock-basis label throughout the library.
using OccupationVector = std::vector<int>;

int total_photons(const OccupationVector& occ);

/// Binomial coefficient as an exact 64-bit integer (desk-scale arguments).
std::uint64_t binomial(int n, int k);

struct OccupationHash {
    std::size_t operator()(const OccupationVector& occ) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (int c : occ) {
            h ^= static_cast<std::size_t>(c) + 0x9e3779b9ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

/// An ordered multimode Fock basis, either a fixed total-photon-number
/// sector or the union of all sectors up to a maximum. States are sorted
/// by total photon number first, lexicographically within a sector, and
/// the basis owns the inverse index map. Immutable after construction;
/// safe to share across threads.
class FockBasis {
  public:
    enum class Sector { Fixed, UpTo };

    /// Empty basis; a placeholder for deferred assignment.
    FockBasis() = default;

    /// All occupations of exactly `photons` photons over `mode_count` modes.
    static FockBasis fixed(int mode_count, int photons);

    /// All occupations with total 0..max_photons, sector-major ordering.
    static FockBasis up_to(int mode_count, int max_photons);

    int mode_count() const { return mode_count_; }
    int photons() const { return photons_; }
    Sector sector() const { return sector_; }
    int size() const { return static_cast<int>(states_.size()); }

    const OccupationVector& state(int k) const { return states_[k]; }
    const std::vector<OccupationVector>& states() const { return states_; }

    /// Position of `occ`; throws std::out_of_range if absent.
    int index_of(const OccupationVector& occ) const;
    bool contains(const OccupationVector& occ) const { return index_.count(occ) != 0; }

    /// Contiguous (offset, size) ranges of the photon-number sectors, in
    /// ascending total order. A fixed basis has a single sector.
    std::vector<std::pair<int, int>> sector_ranges() const;

    friend bool operator==(const FockBasis& a, const FockBasis& b) {
        return a.sector_ == b.sector_ && a.mode_count_ == b.mode_count_ &&
               a.photons_ == b.photons_;
    }

  private:
    FockBasis(int mode_count, int photons, Sector sector,
              std::vector<OccupationVector> states);

    int mode_count_ = 0;
    int photons_ = 0;
    Sector sector_ = Sector::Fixed;
    std::vector<OccupationVector> states_;
    std::unordered_map<OccupationVector, int, OccupationHash> index_;
};

/// Splits `occ` into the counts at `kept_modes` (in the given order) and
/// the complement. Throws on out-of-range or duplicate indices.
std::pair<OccupationVector, OccupationVector>
split_occupation(const OccupationVector& occ, const std::vector<int>& kept_modes);

} // namespace qrp
