// Copyright 2026 The qrp Authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qrp/experiments.hpp"
#include "qrp/io.hpp"
#include "qrp/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitRuntimeError = 3;

void apply_thread_cap() {
#ifdef _OPENMP
    if (const char* env = std::getenv("QRP_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) {
            omp_set_num_threads(cap);
        }
    }
#endif
}

nlohmann::json load_config(const std::string& path, long long seed_override,
                           const std::string& shots_override) {
    nlohmann::json doc = qrp::load_json_file(path);
    if (seed_override >= 0) {
        doc["seed"] = static_cast<std::uint64_t>(seed_override);
    }
    if (!shots_override.empty()) {
        if (shots_override == "exact") {
            doc["shots"] = "exact";
        } else {
            doc["shots"] = std::stoll(shots_override);
        }
    }
    return doc;
}

int run_and_save(const nlohmann::json& config, const std::string& out_dir) {
    qrp::ExperimentManifest manifest;
    manifest.kind = config.value("experiment", "");
    manifest.config = config;
    manifest.out_dir = out_dir;
    const auto start = std::chrono::steady_clock::now();
    const auto record = qrp::run_manifest(manifest);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    manifest.kind = record.config.at("experiment").get<std::string>();
    qrp::save_results(manifest, record, wall);
    std::cout << "wrote " << (manifest.out_dir / "results.json").string() << "\n";
    for (const auto& [key, value] : record.summary) {
        std::cout << "  " << key << " = " << qrp::format_double(value) << "\n";
    }
    return 0;
}

int cmd_generate(const std::string& kind, int count, std::uint64_t seed, int state_modes,
                 const std::string& out_path) {
    nlohmann::json doc;
    doc["kind"] = kind;
    doc["seed"] = seed;
    doc["count"] = count;
    nlohmann::json samples = nlohmann::json::array();
    if (kind == "mixed") {
        for (const auto& sample : qrp::gen_mixed_state_dataset(count, state_modes, seed)) {
            nlohmann::json entry;
            entry["u_source"] = qrp::unitary_to_json(sample.u_source);
            nlohmann::json occs = nlohmann::json::array();
            for (int k = 0; k < sample.rho_in.basis.size(); ++k) {
                occs.push_back(sample.rho_in.basis.state(k));
            }
            entry["basis"] = occs;
            entry["rho_re"] = nlohmann::json::array();
            entry["rho_im"] = nlohmann::json::array();
            for (int r = 0; r < sample.rho_in.dim(); ++r) {
                nlohmann::json re_row = nlohmann::json::array();
                nlohmann::json im_row = nlohmann::json::array();
                for (int c = 0; c < sample.rho_in.dim(); ++c) {
                    re_row.push_back(sample.rho_in.mat(r, c).real());
                    im_row.push_back(sample.rho_in.mat(r, c).imag());
                }
                entry["rho_re"].push_back(re_row);
                entry["rho_im"].push_back(im_row);
            }
            samples.push_back(entry);
        }
    } else if (kind == "noon") {
        for (const auto& [state, rho] : qrp::gen_noon_dataset(count, seed)) {
            samples.push_back({{"n1", state.n1},
                               {"n2", state.n2},
                               {"sigma", state.sigma},
                               {"phi", state.phi}});
        }
    } else if (kind == "spiral") {
        for (const auto& point : qrp::spiral_dataset(count, 0.05, seed)) {
            samples.push_back({{"x", point.x}, {"y", point.y}, {"label", point.label}});
        }
    } else {
        throw qrp::config_error("/kind", "must be mixed, noon, or spiral");
    }
    doc["samples"] = samples;
    qrp::write_text_file(out_path, doc.dump(2) + "\n");
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"qrp: photonic quantum reservoir processing simulator"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run an experiment from a config file");
    std::string run_config;
    std::string run_out = "out";
    long long run_seed = -1;
    std::string run_shots;
    run->add_option("--config", run_config, "config JSON path")->required();
    run->add_option("--out", run_out, "output directory");
    run->add_option("--seed", run_seed, "override the master seed");
    run->add_option("--shots", run_shots, "'exact' or a positive shot count");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "reservoir-size sweep");
    std::string sweep_config;
    std::string sweep_out = "out";
    std::string sweep_sizes;
    long long sweep_seed = -1;
    sweep->add_option("--config", sweep_config, "config JSON path")->required();
    sweep->add_option("--sizes", sweep_sizes, "comma-separated reservoir sizes");
    sweep->add_option("--out", sweep_out, "output directory");
    sweep->add_option("--seed", sweep_seed, "override the master seed");

    // plot-data
    auto* plot = app.add_subcommand("plot-data", "emit plot CSV tables from results");
    std::string plot_results;
    std::string plot_kind;
    std::string plot_out = "out";
    plot->add_option("--results", plot_results, "results.json path")->required();
    plot->add_option("--kind", plot_kind, "fig2b | fig3 | fig4 | fig5")->required();
    plot->add_option("--out", plot_out, "output directory");

    // validate
    auto* validate = app.add_subcommand("validate", "validate a config file");
    std::string validate_config;
    validate->add_option("--config", validate_config, "config JSON path")->required();

    // generate
    auto* generate = app.add_subcommand("generate", "write a dataset JSON");
    std::string gen_kind;
    int gen_count = 100;
    std::uint64_t gen_seed = 1;
    int gen_state_modes = 2;
    std::string gen_out = "dataset.json";
    generate->add_option("--kind", gen_kind, "mixed | noon | spiral")->required();
    generate->add_option("--count", gen_count, "sample count");
    generate->add_option("--seed", gen_seed, "master seed");
    generate->add_option("--state-modes", gen_state_modes, "2 or 3 (mixed datasets)");
    generate->add_option("--out", gen_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    try {
        if (run->parsed()) {
            return run_and_save(load_config(run_config, run_seed, run_shots), run_out);
        }
        if (sweep->parsed()) {
            auto config = load_config(sweep_config, sweep_seed, "");
            config["experiment"] = "sweep";
            if (!sweep_sizes.empty()) {
                std::vector<int> sizes;
                std::size_t pos = 0;
                while (pos < sweep_sizes.size()) {
                    const std::size_t comma = sweep_sizes.find(',', pos);
                    const std::string token =
                        sweep_sizes.substr(pos, comma == std::string::npos ? std::string::npos
                                                                           : comma - pos);
                    sizes.push_back(std::stoi(token));
                    if (comma == std::string::npos) {
                        break;
                    }
                    pos = comma + 1;
                }
                config["sizes"] = sizes;
            }
            return run_and_save(config, sweep_out);
        }
        if (plot->parsed()) {
            const auto results = qrp::load_json_file(plot_results);
            for (const auto& path : qrp::emit_plot_data(results, plot_kind, plot_out)) {
                std::cout << "wrote " << path.string() << "\n";
            }
            return 0;
        }
        if (validate->parsed()) {
            const auto resolved = qrp::resolve_config(qrp::load_json_file(validate_config));
            std::cout << "valid: " << resolved.at("experiment").get<std::string>() << "\n";
            return 0;
        }
        if (generate->parsed()) {
            return cmd_generate(gen_kind, gen_count, gen_seed, gen_state_modes, gen_out);
        }
    } catch (const qrp::config_error& e) {
        std::cerr << "config error at " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeError;
    }
    return 0;
}
