// Command-line front end: audit / evolve / morawetz / scatter /
// counterexample / selftest. Exit codes: 0 success, 1 condition or oracle
// failure, 2 config error.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mnls/config.hpp"
#include "mnls/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"magnetic NLS simulator and Morawetz diagnostics lab"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    int threads = 1;
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* opt = cmd->add_option("--config", config_path, "run configuration (JSON)");
        if (needs_config) opt->required();
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--threads", threads, "worker threads for data-parallel loops");
        cmd->add_option("--seed", seed, "override the config seed")
            ->each([&](const std::string&) { seed_set = true; });
    };

    CLI::App* audit = app.add_subcommand("audit", "gauge-potential admissibility conditions");
    CLI::App* evolve = app.add_subcommand("evolve", "time integration + conservation CSVs");
    CLI::App* morawetz = app.add_subcommand("morawetz", "virial and interaction diagnostics");
    CLI::App* scatter = app.add_subcommand("scatter", "pull-back Cauchy table");
    CLI::App* counterexample =
        app.add_subcommand("counterexample", "pointwise sign-failure demonstration");
    CLI::App* selftest = app.add_subcommand("selftest", "brute-force oracle suite");
    for (CLI::App* cmd : {audit, evolve, morawetz, scatter, counterexample})
        add_common(cmd, true);
    add_common(selftest, false);

    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    omp_set_num_threads(std::max(1, threads));
#else
    (void)threads;
#endif

    try {
        if (selftest->parsed()) return mnls::cmd_selftest(out_dir);

        mnls::RunConfig cfg = mnls::load_config(config_path);
        if (seed_set) cfg.seed = seed;

        if (audit->parsed()) return mnls::cmd_audit(cfg, out_dir);
        if (evolve->parsed()) return mnls::cmd_evolve(cfg, out_dir);
        if (morawetz->parsed()) return mnls::cmd_morawetz(cfg, out_dir);
        if (scatter->parsed()) return mnls::cmd_scatter(cfg, out_dir);
        if (counterexample->parsed()) return mnls::cmd_counterexample(cfg, out_dir);
    } catch (const mnls::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
