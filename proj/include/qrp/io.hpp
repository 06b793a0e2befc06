// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qrp/experiments.hpp"
#include "qrp/tomography.hpp"
#include "qrp/unitary.hpp"

namespace qrp {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Schema violation in a configuration document; `pointer()` is the
/// JSON-pointer path of the offending field.
class config_error : public std::runtime_error {
  public:
    config_error(std::string pointer, const std::string& message)
        : std::runtime_error(pointer + ": " + message), pointer_(std::move(pointer)) {}

    const std::string& pointer() const { return pointer_; }

  private:
    std::string pointer_;
};

/// Everything needed to reproduce a run bit-identically: the experiment
/// kind, the fully resolved config (including the seed), and where results
/// are written.
struct ExperimentManifest {
    std::string kind; // tomography | sweep | noon | noon-direct | spiral | rank
    nlohmann::json config;
    std::filesystem::path out_dir;
    std::string artifact_version = kArtifactVersion;
};

// --- serialization -----------------------------------------------------

nlohmann::json unitary_to_json(const ModeUnitary& u);
ModeUnitary unitary_from_json(const nlohmann::json& j);

/// {"alpha":..., "weights":[[...]], "intercept":[...], "feature_order": [occupations]}
nlohmann::json ridge_model_to_json(const RidgeModel& model, const FockBasis& feature_order);
RidgeModel ridge_model_from_json(const nlohmann::json& j);

nlohmann::json results_to_json(const ResultRecord& record);

// --- configuration -----------------------------------------------------

/// Parses and validates a config document; throws config_error on schema
/// violations, with the JSON-pointer path of the offending field.
TomographyConfig tomography_config_from_json(const nlohmann::json& doc);
NoonConfig noon_config_from_json(const nlohmann::json& doc);
SpiralConfig spiral_config_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const TomographyConfig& cfg);
nlohmann::json to_json(const NoonConfig& cfg);
nlohmann::json to_json(const SpiralConfig& cfg);

/// Fills defaults and validates against the per-kind schema; returns the
/// fully resolved document (what gets persisted next to the results).
nlohmann::json resolve_config(const nlohmann::json& doc);

// --- running and persistence -------------------------------------------

/// Executes the manifest's experiment; the returned record carries the
/// resolved config snapshot.
ResultRecord run_manifest(const ExperimentManifest& manifest);

/// Writes results.json, units.csv (one row per split/realization),
/// config.resolved.json, and run_meta.json (timestamps live only here).
void save_results(const ExperimentManifest& manifest, const ResultRecord& record,
                  double wall_seconds);

/// Tidy CSV tables for plotting. kind is one of fig2b | fig3 | fig4 | fig5
/// and must match the record's experiment; throws config_error otherwise.
/// Returns the written file paths.
std::vector<std::filesystem::path> emit_plot_data(const nlohmann::json& results,
                                                  const std::string& kind,
                                                  const std::filesystem::path& out_dir);

// --- helpers -------------------------------------------------------------

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

nlohmann::json load_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

} // namespace qrp
