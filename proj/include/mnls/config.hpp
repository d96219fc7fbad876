#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mnls {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Resolved run configuration. Parsed from a JSON document with nested
/// blocks; unknown keys anywhere are errors (silent typos destroy
/// reproducibility).
struct RunConfig {
    // grid
    int n = 32;
    double box_half_length = 6.0;

    // gauge
    std::string gauge_family = "zero";
    double gauge_amplitude = 0.0;
    double gauge_epsilon = 0.5;
    std::array<std::string, 3> gauge_a_files{};  // family == sampled
    std::string gauge_a0_file;

    // nonlinearity
    double mu = 1.0;
    double p = 1.0;

    // scheme
    std::string scheme = "rk4";
    bool dt_auto = true;
    double dt = 0.0;
    double t_final = 1.0;
    double stride = 0.1;

    // initial data
    std::string initial_type = "gaussian";  // gaussian | random
    double initial_amplitude = 1.0;
    double initial_width = 1.0;
    double initial_chirp = 0.0;
    std::array<double, 3> initial_phase_k{};
    std::uint64_t seed = 1;

    // auditor
    double auditor_m = 1.0;
    double auditor_b = 0.75;

    // diagnostics
    bool with_p_terms = true;
    double weight_cells = 4.0;

    // counterexample probe
    std::array<double, 3> demo_p{1.0, 0.0, 0.0};
    std::array<double, 3> demo_x0{};
    double demo_radius = 1.0;
};

RunConfig load_config(const std::string& path);

/// Serializes the resolved configuration; every run directory carries the
/// exact values the run used.
std::string resolved_config_json(const RunConfig& cfg);

}  // namespace mnls
