// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include "qrp/io.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qrp {

namespace {

using nlohmann::json;

// --- schema helpers ------------------------------------------------------

[[noreturn]] void fail(const std::string& pointer, const std::string& message) {
    throw config_error(pointer, message);
}

void reject_unknown_keys(const json& doc, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : doc.items()) {
        if (allowed.find(key) == allowed.end()) {
            fail("/" + key, "unknown field");
        }
    }
}

long long get_integer(const json& doc, const std::string& key, long long fallback,
                      long long lo, long long hi) {
    if (!doc.contains(key)) {
        return fallback;
    }
    const auto& v = doc.at(key);
    if (!v.is_number_integer()) {
        fail("/" + key, "must be an integer");
    }
    const long long value = v.get<long long>();
    if (value < lo || value > hi) {
        fail("/" + key, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return value;
}

double get_number(const json& doc, const std::string& key, double fallback, double lo,
                  double hi) {
    if (!doc.contains(key)) {
        return fallback;
    }
    const auto& v = doc.at(key);
    if (!v.is_number()) {
        fail("/" + key, "must be a number");
    }
    const double value = v.get<double>();
    if (!(value >= lo && value <= hi)) {
        fail("/" + key, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    return value;
}

std::uint64_t get_seed(const json& doc) {
    if (!doc.contains("seed")) {
        return 1;
    }
    if (!doc.at("seed").is_number_unsigned() && !doc.at("seed").is_number_integer()) {
        fail("/seed", "must be a non-negative integer");
    }
    const auto v = doc.at("seed").get<long long>();
    if (v < 0) {
        fail("/seed", "must be a non-negative integer");
    }
    return static_cast<std::uint64_t>(v);
}

std::string experiment_kind(const json& doc) {
    if (!doc.contains("experiment") || !doc.at("experiment").is_string()) {
        fail("/experiment", "required string field");
    }
    return doc.at("experiment").get<std::string>();
}

Eigen::MatrixXd matrix_from_json(const json& j, const std::string& pointer) {
    if (!j.is_array() || j.empty()) {
        fail(pointer, "must be a non-empty 2D array");
    }
    const int rows = static_cast<int>(j.size());
    const int cols = static_cast<int>(j.at(0).size());
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j.at(r).size()) != cols) {
            fail(pointer, "rows must have equal length");
        }
        for (int c = 0; c < cols; ++c) {
            m(r, c) = j.at(r).at(c).get<double>();
        }
    }
    return m;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace

// --- serialization ---------------------------------------------------------

nlohmann::json unitary_to_json(const ModeUnitary& u) {
    return {{"dim", u.dim()}, {"re", matrix_to_json(u.mat.real())},
            {"im", matrix_to_json(u.mat.imag())}};
}

ModeUnitary unitary_from_json(const nlohmann::json& j) {
    if (!j.contains("dim") || !j.contains("re") || !j.contains("im")) {
        fail("/", "unitary document requires dim, re, im");
    }
    const int dim = j.at("dim").get<int>();
    const Eigen::MatrixXd re = matrix_from_json(j.at("re"), "/re");
    const Eigen::MatrixXd im = matrix_from_json(j.at("im"), "/im");
    if (re.rows() != dim || re.cols() != dim || im.rows() != dim || im.cols() != dim) {
        fail("/dim", "matrix shape does not match dim");
    }
    ModeUnitary u;
    u.mat = re.cast<std::complex<double>>() +
            std::complex<double>(0.0, 1.0) * im.cast<std::complex<double>>();
    return u;
}

nlohmann::json ridge_model_to_json(const RidgeModel& model, const FockBasis& feature_order) {
    json order = json::array();
    for (int k = 0; k < feature_order.size(); ++k) {
        order.push_back(feature_order.state(k));
    }
    json intercept = json::array();
    for (int k = 0; k < model.intercept.size(); ++k) {
        intercept.push_back(model.intercept(k));
    }
    return {{"alpha", model.alpha},
            {"weights", matrix_to_json(model.weights)},
            {"intercept", intercept},
            {"feature_order", order}};
}

RidgeModel ridge_model_from_json(const nlohmann::json& j) {
    RidgeModel model;
    model.alpha = j.at("alpha").get<double>();
    model.weights = matrix_from_json(j.at("weights"), "/weights");
    const auto& b = j.at("intercept");
    model.intercept.resize(static_cast<int>(b.size()));
    for (int k = 0; k < model.intercept.size(); ++k) {
        model.intercept(k) = b.at(k).get<double>();
    }
    if (model.intercept.size() != model.weights.rows()) {
        fail("/intercept", "length must match the weight row count");
    }
    return model;
}

nlohmann::json results_to_json(const ResultRecord& record) {
    json series = json::object();
    for (const auto& [name, values] : record.series) {
        series[name] = values;
    }
    json summary = json::object();
    for (const auto& [name, value] : record.summary) {
        summary[name] = value;
    }
    return {{"experiment", record.experiment}, {"version", kArtifactVersion},
            {"config", record.config},         {"summary", summary},
            {"series", series},                {"payload", record.payload}};
}

// --- configuration -----------------------------------------------------------

TomographyConfig tomography_config_from_json(const nlohmann::json& doc) {
    reject_unknown_keys(doc, {"experiment", "seed", "state_modes", "circuit_modes",
                              "reservoir_modes", "dataset_size", "train_count", "train_counts",
                              "split_seeds", "shots", "alpha", "sizes"});
    TomographyConfig cfg;
    cfg.master_seed = get_seed(doc);
    cfg.state_modes = static_cast<int>(get_integer(doc, "state_modes", 2, 2, 3));
    cfg.circuit_modes = static_cast<int>(get_integer(doc, "circuit_modes", 6, 6, 6));
    cfg.dataset_size = static_cast<int>(get_integer(doc, "dataset_size", 100, 2, 100000));
    cfg.reservoir_modes = static_cast<int>(
        get_integer(doc, "reservoir_modes", cfg.state_modes == 2 ? 4 : 9, cfg.state_modes, 16));
    cfg.train_count = static_cast<int>(
        get_integer(doc, "train_count", std::min(70, cfg.dataset_size - 1), 1,
                    cfg.dataset_size - 1));
    cfg.split_seeds = static_cast<int>(get_integer(doc, "split_seeds", 50, 1, 100000));
    cfg.alpha = get_number(doc, "alpha", 1e-3, 0.0, 1e6);
    if (doc.contains("shots")) {
        const auto& s = doc.at("shots");
        if (s.is_string()) {
            if (s.get<std::string>() != "exact") {
                fail("/shots", "must be \"exact\" or a positive integer");
            }
            cfg.shots = 0;
        } else if (s.is_number_integer() && s.get<long long>() >= 1) {
            cfg.shots = s.get<long long>();
        } else {
            fail("/shots", "must be \"exact\" or a positive integer");
        }
    }
    if (doc.contains("train_counts")) {
        if (!doc.at("train_counts").is_array() || doc.at("train_counts").empty()) {
            fail("/train_counts", "must be a non-empty array of integers");
        }
        for (std::size_t i = 0; i < doc.at("train_counts").size(); ++i) {
            const auto& v = doc.at("train_counts").at(i);
            if (!v.is_number_integer() || v.get<int>() < 1 ||
                v.get<int>() >= cfg.dataset_size) {
                fail("/train_counts/" + std::to_string(i),
                     "must be an integer in [1, dataset_size)");
            }
            cfg.train_counts.push_back(v.get<int>());
        }
    }
    return cfg;
}

NoonConfig noon_config_from_json(const nlohmann::json& doc) {
    reject_unknown_keys(doc, {"experiment", "seed", "train_count", "test_count",
                              "reservoir_count", "detector_count", "alpha"});
    NoonConfig cfg;
    cfg.master_seed = get_seed(doc);
    cfg.train_count = static_cast<int>(get_integer(doc, "train_count", 1500, 1, 1000000));
    cfg.test_count = static_cast<int>(get_integer(doc, "test_count", 150, 1, 1000000));
    cfg.reservoir_count = static_cast<int>(get_integer(doc, "reservoir_count", 50, 1, 10000));
    cfg.detector_count = static_cast<int>(get_integer(doc, "detector_count", 3, 2, 3));
    cfg.alpha = get_number(doc, "alpha", 1e-3, 0.0, 1e6);
    return cfg;
}

SpiralConfig spiral_config_from_json(const nlohmann::json& doc) {
    reject_unknown_keys(doc, {"experiment", "seed", "points_per_class", "noise_sd", "epsilon",
                              "epsilons", "epochs", "learning_rate", "hardware_epsilon",
                              "reservoir_realizations", "encoding"});
    SpiralConfig cfg;
    cfg.master_seed = get_seed(doc);
    cfg.points_per_class = static_cast<int>(get_integer(doc, "points_per_class", 300, 1, 100000));
    cfg.noise_sd = get_number(doc, "noise_sd", 0.02, 0.0, 10.0);
    cfg.epsilon = get_number(doc, "epsilon", 0.075, 0.0, 10.0);
    cfg.epochs = static_cast<int>(get_integer(doc, "epochs", 2000, 1, 10000000));
    cfg.learning_rate = get_number(doc, "learning_rate", 2.0, 1e-12, 1e6);
    cfg.hardware_epsilon = get_number(doc, "hardware_epsilon", 0.075, 0.0, 10.0);
    cfg.reservoir_realizations =
        static_cast<int>(get_integer(doc, "reservoir_realizations", 10, 1, 10000));
    if (doc.contains("encoding")) {
        if (!doc.at("encoding").is_string() ||
            (doc.at("encoding") != "polar" && doc.at("encoding") != "cartesian")) {
            fail("/encoding", "must be 'polar' or 'cartesian'");
        }
        cfg.encoding = doc.at("encoding").get<std::string>();
    }
    if (doc.contains("epsilons")) {
        if (!doc.at("epsilons").is_array() || doc.at("epsilons").empty()) {
            fail("/epsilons", "must be a non-empty ascending array starting at 0");
        }
        cfg.epsilons.clear();
        for (std::size_t i = 0; i < doc.at("epsilons").size(); ++i) {
            const auto& v = doc.at("epsilons").at(i);
            if (!v.is_number() || v.get<double>() < 0.0) {
                fail("/epsilons/" + std::to_string(i), "must be a non-negative number");
            }
            cfg.epsilons.push_back(v.get<double>());
        }
        if (cfg.epsilons.front() != 0.0 ||
            !std::is_sorted(cfg.epsilons.begin(), cfg.epsilons.end())) {
            fail("/epsilons", "must be ascending and start at 0");
        }
    }
    return cfg;
}

nlohmann::json to_json(const TomographyConfig& cfg) {
    json doc = {{"state_modes", cfg.state_modes},
                {"circuit_modes", cfg.circuit_modes},
                {"reservoir_modes", cfg.reservoir_modes},
                {"dataset_size", cfg.dataset_size},
                {"train_count", cfg.train_count},
                {"split_seeds", cfg.split_seeds},
                {"alpha", cfg.alpha},
                {"seed", cfg.master_seed}};
    if (cfg.shots > 0) {
        doc["shots"] = cfg.shots;
    } else {
        doc["shots"] = "exact";
    }
    if (!cfg.train_counts.empty()) {
        doc["train_counts"] = cfg.train_counts;
    }
    return doc;
}

nlohmann::json to_json(const NoonConfig& cfg) {
    return {{"train_count", cfg.train_count},   {"test_count", cfg.test_count},
            {"reservoir_count", cfg.reservoir_count}, {"detector_count", cfg.detector_count},
            {"alpha", cfg.alpha},               {"seed", cfg.master_seed}};
}

nlohmann::json to_json(const SpiralConfig& cfg) {
    return {{"points_per_class", cfg.points_per_class},
            {"noise_sd", cfg.noise_sd},
            {"epsilon", cfg.epsilon},
            {"epsilons", cfg.epsilons},
            {"epochs", cfg.epochs},
            {"learning_rate", cfg.learning_rate},
            {"hardware_epsilon", cfg.hardware_epsilon},
            {"reservoir_realizations", cfg.reservoir_realizations},
            {"encoding", cfg.encoding},
            {"seed", cfg.master_seed}};
}

nlohmann::json resolve_config(const nlohmann::json& doc) {
    const std::string kind = experiment_kind(doc);
    json resolved;
    if (kind == "tomography" || kind == "sweep") {
        const auto cfg = tomography_config_from_json(doc);
        resolved = to_json(cfg);
        if (kind == "sweep") {
            if (!doc.contains("sizes") || !doc.at("sizes").is_array() ||
                doc.at("sizes").empty()) {
                fail("/sizes", "sweep requires a non-empty ascending array of reservoir sizes");
            }
            std::vector<int> sizes;
            for (std::size_t i = 0; i < doc.at("sizes").size(); ++i) {
                const auto& v = doc.at("sizes").at(i);
                if (!v.is_number_integer() || v.get<int>() < cfg.state_modes) {
                    fail("/sizes/" + std::to_string(i),
                         "must be an integer >= state_modes");
                }
                sizes.push_back(v.get<int>());
            }
            if (!std::is_sorted(sizes.begin(), sizes.end())) {
                fail("/sizes", "must be ascending");
            }
            resolved["sizes"] = sizes;
        }
    } else if (kind == "noon" || kind == "noon-direct") {
        resolved = to_json(noon_config_from_json(doc));
    } else if (kind == "spiral") {
        resolved = to_json(spiral_config_from_json(doc));
    } else if (kind == "rank") {
        reject_unknown_keys(doc, {"experiment", "seed", "samples"});
        resolved["seed"] = get_seed(doc);
        resolved["samples"] = get_integer(doc, "samples", 200, 2, 100000);
    } else {
        fail("/experiment", "unknown experiment kind '" + kind + "'");
    }
    resolved["experiment"] = kind;
    return resolved;
}

// --- running and persistence ---------------------------------------------

ResultRecord run_manifest(const ExperimentManifest& manifest) {
    const json resolved = resolve_config(manifest.config);
    const std::string kind = resolved.at("experiment").get<std::string>();
    ResultRecord record;
    if (kind == "tomography") {
        record = run_tomography_study(tomography_config_from_json(resolved));
    } else if (kind == "sweep") {
        record = sweep_reservoir_size(tomography_config_from_json(resolved),
                                      resolved.at("sizes").get<std::vector<int>>());
    } else if (kind == "noon") {
        record = run_noon_study(noon_config_from_json(resolved));
    } else if (kind == "noon-direct") {
        record = direct_feature_regression(noon_config_from_json(resolved));
    } else if (kind == "spiral") {
        record = run_spiral_study(spiral_config_from_json(resolved));
    } else { // rank
        record = run_rank_study(resolved.at("seed").get<std::uint64_t>(),
                                resolved.at("samples").get<int>());
    }
    record.config = resolved;
    return record;
}

void save_results(const ExperimentManifest& manifest, const ResultRecord& record,
                  double wall_seconds) {
    namespace fs = std::filesystem;
    fs::create_directories(manifest.out_dir);

    write_text_file(manifest.out_dir / "results.json", results_to_json(record).dump(2) + "\n");
    write_text_file(manifest.out_dir / "config.resolved.json", record.config.dump(2) + "\n");

    // One row per split/realization; columns are the sorted series names.
    std::string csv = "unit";
    std::size_t max_len = 0;
    for (const auto& [name, values] : record.series) {
        csv += "," + name;
        max_len = std::max(max_len, values.size());
    }
    csv += "\n";
    for (std::size_t row = 0; row < max_len; ++row) {
        csv += std::to_string(row);
        for (const auto& [name, values] : record.series) {
            csv += ",";
            if (row < values.size()) {
                csv += format_double(values[row]);
            }
        }
        csv += "\n";
    }
    write_text_file(manifest.out_dir / "units.csv", csv);

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    const auto now = std::chrono::system_clock::now();
    const auto stamp = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
    const json meta = {{"unix_time", stamp.count()},
                       {"wall_seconds", wall_seconds},
                       {"threads", threads},
                       {"version", manifest.artifact_version}};
    write_text_file(manifest.out_dir / "run_meta.json", meta.dump(2) + "\n");
}

// --- plot data --------------------------------------------------------------

std::vector<std::filesystem::path> emit_plot_data(const nlohmann::json& results,
                                                  const std::string& kind,
                                                  const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    if (!results.contains("experiment")) {
        throw config_error("/experiment", "results document missing experiment kind");
    }
    const std::string experiment = results.at("experiment").get<std::string>();
    std::vector<fs::path> written;

    auto emit = [&](const fs::path& name, const std::string& content) {
        fs::create_directories(out_dir);
        write_text_file(out_dir / name, content);
        written.push_back(out_dir / name);
    };

    if (kind == "fig2b") {
        if (experiment != "tomography") {
            throw config_error("/experiment", "fig2b requires tomography results");
        }
        const auto& curve = results.at("payload").at("curve");
        if (curve.empty()) {
            throw config_error("/payload/curve", "no curve rows to emit");
        }
        std::string csv = "train_count,series,mean_fidelity,sd\n";
        for (const auto& row : curve) {
            const std::string tc = std::to_string(row.at("train_count").get<int>());
            csv += tc + ",qrp," + format_double(row.at("qrp_mean").get<double>()) + "," +
                   format_double(row.at("qrp_sd").get<double>()) + "\n";
            csv += tc + ",pnr," + format_double(row.at("pnr_mean").get<double>()) + "," +
                   format_double(row.at("pnr_sd").get<double>()) + "\n";
        }
        emit("fig2b.csv", csv);
    } else if (kind == "fig3") {
        if (experiment != "sweep") {
            throw config_error("/experiment", "fig3 requires sweep results");
        }
        const auto& rows = results.at("payload").at("sizes");
        if (rows.empty()) {
            throw config_error("/payload/sizes", "no sweep rows to emit");
        }
        std::string csv = "reservoir_modes,outcome_count,mean_fidelity,sd\n";
        for (const auto& row : rows) {
            csv += std::to_string(row.at("reservoir_modes").get<int>()) + "," +
                   std::to_string(row.at("outcome_count").get<int>()) + "," +
                   format_double(row.at("mean_fidelity").get<double>()) + "," +
                   format_double(row.at("sd").get<double>()) + "\n";
        }
        emit("fig3.csv", csv);
    } else if (kind == "fig4") {
        if (experiment != "noon") {
            throw config_error("/experiment", "fig4 requires noon results");
        }
        for (const std::string series : {"qrp", "pnr"}) {
            const auto& block = results.at("payload").at(series);
            const auto& scatter = block.at("scatter");
            if (scatter.empty()) {
                throw config_error("/payload/" + series + "/scatter", "no rows to emit");
            }
            const int detectors = block.at("detector_count").get<int>();
            std::string csv = "metric,true,predicted,detector_count\n";
            for (const auto& row : scatter) {
                for (const std::string metric : {"purity", "entropy", "negativity"}) {
                    csv += metric + "," +
                           format_double(row.at("true").at(metric).get<double>()) + "," +
                           format_double(row.at("predicted").at(metric).get<double>()) + "," +
                           std::to_string(detectors) + "\n";
                }
            }
            emit("fig4_" + series + ".csv", csv);
        }
    } else if (kind == "fig5") {
        if (experiment != "spiral") {
            throw config_error("/experiment", "fig5 requires spiral results");
        }
        const auto& rows = results.at("payload").at("epsilon_curve");
        if (rows.empty()) {
            throw config_error("/payload/epsilon_curve", "no rows to emit");
        }
        const double classical = results.at("summary").at("mean_accuracy_classical").get<double>();
        const double classical_sd = results.at("summary").at("sd_accuracy_classical").get<double>();
        std::string csv = "epsilon,series,mean_accuracy,sd\n";
        for (const auto& row : rows) {
            const std::string eps = format_double(row.at("epsilon").get<double>());
            csv += eps + ",quantum," + format_double(row.at("mean_accuracy_hw").get<double>()) +
                   "," + format_double(row.at("sd_accuracy_hw").get<double>()) + "\n";
            csv += eps + ",classical," + format_double(classical) + "," +
                   format_double(classical_sd) + "\n";
        }
        emit("fig5.csv", csv);
    } else {
        throw config_error("/kind", "unknown plot kind '" + kind + "'");
    }
    return written;
}

// --- helpers -----------------------------------------------------------------

std::string format_double(double value) {
    char buffer[32];
    const auto res = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, res.ptr);
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path.string());
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw config_error("/", "JSON parse error in " + path.string() + ": " + e.what());
    }
    return doc;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
}

} // namespace qrp
