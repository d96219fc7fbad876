#include "mnls/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace mnls {

namespace {

using nlohmann::json;

// reject unknown keys with the full path
void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.contains(it.key()))
            throw ConfigError("config error: unknown key '" + where + it.key() + "'");
}

double require_positive(double v, const std::string& field) {
    if (!(v > 0.0)) throw ConfigError("config error: " + field + " must be > 0");
    return v;
}

}  // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config error: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config error: invalid JSON: ") + e.what());
    }

    RunConfig cfg;
    check_keys(j, "", {"grid", "gauge", "nl", "scheme", "initial", "auditor", "diagnostics",
                       "seed", "counterexample"});
    try {
        if (j.contains("grid")) {
            const json& g = j["grid"];
            check_keys(g, "grid.", {"n", "box_half_length"});
            if (g.contains("n")) cfg.n = g["n"].get<int>();
            if (g.contains("box_half_length"))
                cfg.box_half_length = g["box_half_length"].get<double>();
            if (cfg.n < 8 || (cfg.n & (cfg.n - 1)) != 0)
                throw ConfigError("config error: grid.n must be a power of two >= 8");
            require_positive(cfg.box_half_length, "grid.box_half_length");
        }
        if (j.contains("gauge")) {
            const json& g = j["gauge"];
            check_keys(g, "gauge.", {"family", "amplitude", "epsilon", "a_files", "a0_file"});
            if (g.contains("family")) cfg.gauge_family = g["family"].get<std::string>();
            if (g.contains("amplitude")) cfg.gauge_amplitude = g["amplitude"].get<double>();
            if (g.contains("epsilon")) cfg.gauge_epsilon = g["epsilon"].get<double>();
            if (g.contains("a_files")) {
                const auto files = g["a_files"].get<std::vector<std::string>>();
                if (files.size() != 3)
                    throw ConfigError("config error: gauge.a_files needs three paths");
                for (int k = 0; k < 3; ++k) cfg.gauge_a_files[k] = files[k];
            }
            if (g.contains("a0_file")) cfg.gauge_a0_file = g["a0_file"].get<std::string>();
            if (cfg.gauge_family == "sampled" && cfg.gauge_a_files[0].empty())
                throw ConfigError("config error: gauge.family 'sampled' needs gauge.a_files");
        }
        if (j.contains("nl")) {
            const json& g = j["nl"];
            check_keys(g, "nl.", {"mu", "p"});
            if (g.contains("mu")) cfg.mu = g["mu"].get<double>();
            if (g.contains("p")) cfg.p = g["p"].get<double>();
            require_positive(cfg.p, "nl.p");
        }
        if (j.contains("scheme")) {
            const json& g = j["scheme"];
            check_keys(g, "scheme.", {"name", "dt", "T", "stride"});
            if (g.contains("name")) cfg.scheme = g["name"].get<std::string>();
            if (cfg.scheme != "rk4" && cfg.scheme != "strang")
                throw ConfigError("config error: scheme.name must be rk4 or strang");
            if (g.contains("dt")) {
                if (g["dt"].is_string()) {
                    if (g["dt"].get<std::string>() != "auto")
                        throw ConfigError("config error: scheme.dt must be a number or \"auto\"");
                    cfg.dt_auto = true;
                } else {
                    cfg.dt = require_positive(g["dt"].get<double>(), "scheme.dt");
                    cfg.dt_auto = false;
                }
            }
            if (g.contains("T")) cfg.t_final = require_positive(g["T"].get<double>(), "scheme.T");
            if (g.contains("stride"))
                cfg.stride = require_positive(g["stride"].get<double>(), "scheme.stride");
            if (cfg.stride > cfg.t_final)
                throw ConfigError("config error: scheme.stride must not exceed scheme.T");
        }
        if (j.contains("initial")) {
            const json& g = j["initial"];
            check_keys(g, "initial.", {"type", "amplitude", "width", "chirp", "phase_k"});
            if (g.contains("type")) cfg.initial_type = g["type"].get<std::string>();
            if (cfg.initial_type != "gaussian" && cfg.initial_type != "random")
                throw ConfigError("config error: initial.type must be gaussian or random");
            if (g.contains("amplitude")) cfg.initial_amplitude = g["amplitude"].get<double>();
            if (g.contains("width"))
                cfg.initial_width = require_positive(g["width"].get<double>(), "initial.width");
            if (g.contains("chirp")) cfg.initial_chirp = g["chirp"].get<double>();
            if (g.contains("phase_k")) {
                const auto pk = g["phase_k"].get<std::vector<double>>();
                if (pk.size() != 3)
                    throw ConfigError("config error: initial.phase_k needs three components");
                for (int k = 0; k < 3; ++k) cfg.initial_phase_k[k] = pk[k];
            }
        }
        if (j.contains("auditor")) {
            const json& g = j["auditor"];
            check_keys(g, "auditor.", {"M", "b"});
            if (g.contains("M")) cfg.auditor_m = require_positive(g["M"].get<double>(), "auditor.M");
            if (g.contains("b")) {
                cfg.auditor_b = g["b"].get<double>();
                if (!(cfg.auditor_b > 0.0 && cfg.auditor_b < 1.0))
                    throw ConfigError("config error: auditor.b must lie in (0, 1)");
            }
        }
        if (j.contains("diagnostics")) {
            const json& g = j["diagnostics"];
            check_keys(g, "diagnostics.", {"p_terms", "weight_cells"});
            if (g.contains("p_terms")) cfg.with_p_terms = g["p_terms"].get<bool>();
            if (g.contains("weight_cells"))
                cfg.weight_cells =
                    require_positive(g["weight_cells"].get<double>(), "diagnostics.weight_cells");
        }
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("counterexample")) {
            const json& g = j["counterexample"];
            check_keys(g, "counterexample.", {"p", "x0", "radius"});
            auto vec3 = [&](const json& v, const std::string& field) {
                const auto a = v.get<std::vector<double>>();
                if (a.size() != 3)
                    throw ConfigError("config error: " + field + " needs three components");
                return std::array<double, 3>{a[0], a[1], a[2]};
            };
            if (g.contains("p")) cfg.demo_p = vec3(g["p"], "counterexample.p");
            if (g.contains("x0")) cfg.demo_x0 = vec3(g["x0"], "counterexample.x0");
            if (g.contains("radius"))
                cfg.demo_radius =
                    require_positive(g["radius"].get<double>(), "counterexample.radius");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
    return cfg;
}

std::string resolved_config_json(const RunConfig& cfg) {
    json j;
    j["grid"] = {{"n", cfg.n}, {"box_half_length", cfg.box_half_length}};
    j["gauge"] = {{"family", cfg.gauge_family},
                  {"amplitude", cfg.gauge_amplitude},
                  {"epsilon", cfg.gauge_epsilon}};
    if (cfg.gauge_family == "sampled") {
        j["gauge"]["a_files"] = cfg.gauge_a_files;
        j["gauge"]["a0_file"] = cfg.gauge_a0_file;
    }
    j["nl"] = {{"mu", cfg.mu}, {"p", cfg.p}};
    j["scheme"] = {{"name", cfg.scheme},
                   {"T", cfg.t_final},
                   {"stride", cfg.stride}};
    if (cfg.dt_auto)
        j["scheme"]["dt"] = "auto";
    else
        j["scheme"]["dt"] = cfg.dt;
    j["initial"] = {{"type", cfg.initial_type},
                    {"amplitude", cfg.initial_amplitude},
                    {"width", cfg.initial_width},
                    {"chirp", cfg.initial_chirp},
                    {"phase_k", cfg.initial_phase_k}};
    j["auditor"] = {{"M", cfg.auditor_m}, {"b", cfg.auditor_b}};
    j["diagnostics"] = {{"p_terms", cfg.with_p_terms}, {"weight_cells", cfg.weight_cells}};
    j["seed"] = cfg.seed;
    j["counterexample"] = {{"p", cfg.demo_p}, {"x0", cfg.demo_x0}, {"radius", cfg.demo_radius}};
    return j.dump(2) + "\n";
}

}  // namespace mnls
