#pragma once

#include <string>

#include "mnls/config.hpp"
#include "mnls/evolve.hpp"
#include "mnls/gauge.hpp"

namespace mnls {

/// Everything a subcommand needs, resolved from the config. Construction
/// validates (CFL bound, gauge parameters) before any field allocation.
struct RunSetup {
    Grid grid;
    GaugePotential gauge;
    EvolveContext ctx;
    ComplexField u0;
    double dt_request = 0.0;  // 0 = auto
};

RunSetup prepare_run(const RunConfig& cfg);

/// Exit codes: 0 success, 1 condition/oracle failure, 2 config error
/// (config errors are thrown as ConfigError and mapped by the caller).
int cmd_audit(const RunConfig& cfg, const std::string& out_dir);
int cmd_evolve(const RunConfig& cfg, const std::string& out_dir);
int cmd_morawetz(const RunConfig& cfg, const std::string& out_dir);
int cmd_scatter(const RunConfig& cfg, const std::string& out_dir);
int cmd_counterexample(const RunConfig& cfg, const std::string& out_dir);
int cmd_selftest(const std::string& out_dir);

}  // namespace mnls
