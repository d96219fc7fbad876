#include "mnls/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mnls/audit.hpp"
#include "mnls/csv.hpp"
#include "mnls/integrate.hpp"
#include "mnls/morawetz.hpp"
#include "mnls/norms.hpp"
#include "mnls/quadrature.hpp"
#include "mnls/snapshot_io.hpp"
#include "mnls/states.hpp"
#include "mnls/stress.hpp"

namespace mnls {

namespace {

void ensure_dir(const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
}

void echo_config(const RunConfig& cfg, const std::string& out_dir) {
    std::ofstream out(out_dir + "/resolved_config.json", std::ios::binary);
    out << resolved_config_json(cfg);
}

GaugePotential gauge_from_config(const RunConfig& cfg, const Grid& g) {
    if (cfg.gauge_family == "sampled") {
        RealVectorField a(g);
        for (int j = 0; j < 3; ++j) {
            Snapshot snap = read_snapshot(cfg.gauge_a_files[j]);
            if (snap.field.grid != g)
                throw ConfigError("config error: gauge.a_files grid does not match grid block");
            a[j] = real_part(snap.field);
        }
        RealField a0(g);
        if (!cfg.gauge_a0_file.empty()) {
            Snapshot snap = read_snapshot(cfg.gauge_a0_file);
            if (snap.field.grid != g)
                throw ConfigError("config error: gauge.a0_file grid does not match grid block");
            a0 = real_part(snap.field);
        }
        return coulomb_project(a, a0);
    }
    try {
        return make_potential(cfg.gauge_family, cfg.gauge_amplitude, cfg.gauge_epsilon);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
}

void emit_plot_script(const std::string& out_dir, const std::string& csv,
                      const std::vector<std::pair<int, std::string>>& columns) {
    std::ofstream gp(out_dir + "/plots.gp", std::ios::binary);
    gp << "# gnuplot script for the run CSVs\n";
    gp << "set datafile separator \",\"\n";
    gp << "set key outside\n";
    gp << "set xlabel \"t\"\n";
    gp << "plot";
    bool first = true;
    for (const auto& [col, title] : columns) {
        gp << (first ? " " : ", \\\n     ") << "\"" << csv << "\" using 1:" << col
           << " with lines title \"" << title << "\"";
        first = false;
    }
    gp << "\n";
}

}  // namespace

RunSetup prepare_run(const RunConfig& cfg) {
    RunSetup s;
    s.grid = Grid(cfg.n, cfg.box_half_length);
    if (!cfg.dt_auto) {
        if (cfg.dt > cfl_bound(s.grid) * (1.0 + 1e-12))
            throw ConfigError("config error: scheme.dt exceeds the stability bound 0.2 dx^2 = " +
                              csv_format(cfl_bound(s.grid)));
        s.dt_request = cfg.dt;
    }
    s.gauge = gauge_from_config(cfg, s.grid);
    s.ctx = EvolveContext::make(s.grid, s.gauge, NonlinearitySpec{cfg.mu, cfg.p});
    if (cfg.initial_type == "gaussian") {
        s.u0 = gaussian_state(s.grid, cfg.initial_amplitude, cfg.initial_width, {},
                              cfg.initial_chirp,
                              Vec3{cfg.initial_phase_k[0], cfg.initial_phase_k[1],
                                   cfg.initial_phase_k[2]});
    } else {
        s.u0 = random_smooth_state(s.grid, cfg.seed, cfg.initial_amplitude);
    }
    return s;
}

int cmd_audit(const RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    echo_config(cfg, out_dir);
    Grid grid(cfg.n, cfg.box_half_length);
    GaugePotential gauge = gauge_from_config(cfg, grid);
    ConditionReport rep;
    try {
        rep = audit(gauge, grid, cfg.auditor_m, cfg.auditor_b);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }

    std::ofstream table(out_dir + "/conditions.txt", std::ios::binary);
    table << rep.table();
    std::cout << rep.table();

    CsvWriter csv(out_dir + "/conditions.csv",
                  {"condition", "value", "threshold", "pass", "caveat"});
    for (const auto& e : rep.entries) {
        csv.begin_row();
        csv.cell(e.name);
        csv.cell(e.value);
        if (e.bounded_requirement)
            csv.cell(std::string("bounded"));
        else
            csv.cell(e.threshold);
        csv.cell(std::string(e.pass ? "pass" : "fail"));
        std::string caveat = e.caveat;
        if (e.bounded_requirement)
            caveat += (caveat.empty() ? "" : "; ") + std::string("outer_growth=") +
                      csv_format(e.growth);
        csv.cell(caveat);
        csv.end_row();
    }
    return rep.all_strict_pass() ? 0 : 1;
}

namespace {
int flush_abort_note(const Trajectory& traj, const std::string& out_dir) {
    if (!traj.aborted) return 0;
    std::ofstream note(out_dir + "/aborted.txt", std::ios::binary);
    note << traj.abort_reason << "\n";
    std::cerr << "run aborted: " << traj.abort_reason
              << " (diagnostics flushed for the finite prefix)\n";
    return 1;
}
}  // namespace

int cmd_evolve(const RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    echo_config(cfg, out_dir);
    RunSetup s = prepare_run(cfg);
    Trajectory traj =
        run_trajectory(s.u0, cfg.t_final, cfg.stride, cfg.scheme, s.ctx, s.dt_request);
    CurvatureField cf = curvature(s.gauge, s.grid);

    CsvWriter csv(out_dir + "/conservation.csv",
                  {"t", "mass", "energy", "mass_residual_L2", "momentum_residual_L2"});
    for (int k = 0; k < traj.count(); ++k) {
        csv.begin_row();
        csv.cell(traj.times[k]);
        csv.cell(mass(traj.at(k)));
        csv.cell(energy(traj.at(k), s.ctx));
        if (k > 0 && k + 1 < traj.count()) {
            csv.cell(mass_charge_residual(traj, k, s.ctx).l2);
            csv.cell(momentum_balance_residual(traj, k, s.ctx, cf).l2);
        } else {
            csv.cell_empty();
            csv.cell_empty();
        }
        csv.end_row();
    }
    write_snapshot(out_dir + "/u_final.snap", traj.snaps.back(), "u", traj.times.back());
    emit_plot_script(out_dir, "conservation.csv",
                     {{2, "mass"}, {3, "energy"}, {4, "mass residual"},
                      {5, "momentum residual"}});
    return flush_abort_note(traj, out_dir);
}

int cmd_morawetz(const RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    echo_config(cfg, out_dir);
    RunSetup s = prepare_run(cfg);
    if (cfg.mu < 0.0)
        throw ConfigError("config error: nl.mu must be >= 0 for the morawetz diagnostics");
    Trajectory traj =
        run_trajectory(s.u0, cfg.t_final, cfg.stride, cfg.scheme, s.ctx, s.dt_request);
    MorawetzReport rep =
        morawetz_report(traj, s.ctx, s.gauge, cfg.weight_cells, cfg.with_p_terms);

    CsvWriter csv(out_dir + "/morawetz.csv",
                  {"t", "M_a", "M_interaction", "P1", "P2", "P3", "P4", "P5", "virial_lhs",
                   "virial_rhs", "thm1_ratio"});
    const int n = traj.count();
    for (int k = 0; k < n; ++k) {
        csv.begin_row();
        csv.cell(traj.times[k]);
        csv.cell(rep.m_a[k]);
        csv.cell(rep.m_interaction[k]);
        for (int t = 0; t < 5; ++t) csv.cell(rep.p[t][k]);
        // running virial sides
        csv.cell(rep.m_a[k] - rep.m_a[0]);
        const std::vector<double> w = composite_weights(k, traj.stride);
        double rhs = 0.0;
        for (int j = 0; j <= k; ++j) rhs += w[j] * rep.virial.integrand[j];
        csv.cell(rhs);
        csv.cell(rep.thm1_ratio[k]);
        csv.end_row();
    }

    std::ofstream summary(out_dir + "/morawetz_summary.txt", std::ios::binary);
    summary << "virial lhs " << csv_format(rep.virial.lhs) << "\n"
            << "virial rhs " << csv_format(rep.virial.rhs) << "\n"
            << "virial mismatch " << csv_format(rep.virial.mismatch) << " of scale "
            << csv_format(rep.virial.scale) << "\n"
            << "int (P3+P5) dt " << csv_format(rep.p3p5_time_integral) << "\n"
            << "M(T) - M(0) " << csv_format(rep.interaction_gain) << "\n"
            << "display inequality " << (rep.display_inequality_ok ? "holds" : "VIOLATED") << "\n"
            << "thm1 ratio at T " << csv_format(rep.thm1_ratio.back()) << "\n"
            << "auditor strict pass " << (rep.auditor_strict_pass ? "yes" : "no") << "\n"
            << "rho floor " << csv_format(rep.rho_floor_used) << ", weight eps "
            << csv_format(rep.weight_eps) << "\n"
            << "B bookkeeping defect " << csv_format(rep.b_bookkeeping_defect) << "\n"
            << rep.notes << "\n";

    emit_plot_script(out_dir, "morawetz.csv",
                     {{2, "M_a"}, {3, "M"}, {4, "P1"}, {5, "P2"}, {6, "P3"}, {7, "P4"},
                      {8, "P5"}, {11, "thm1 ratio"}});

    if (flush_abort_note(traj, out_dir) != 0) return 1;
    // in-process positivity checks (defocusing structure)
    if (cfg.with_p_terms) {
        double scale = 0.0;
        for (int k = 0; k < n; ++k)
            scale = std::max({scale, std::abs(rep.p[0][k]), std::abs(rep.p[1][k]),
                              rep.p[2][k], std::abs(rep.p[3][k])});
        const double tol = 1e-10 * std::max(1.0, scale);
        for (int k = 0; k < n; ++k) {
            if (rep.p[0][k] < -tol || rep.p[1][k] < -tol) return 1;
            if (cfg.mu > 0.0 && rep.p[3][k] < -tol) return 1;
        }
        if (!rep.display_inequality_ok) return 1;
    }
    return 0;
}

int cmd_scatter(const RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    echo_config(cfg, out_dir);
    RunSetup s = prepare_run(cfg);
    Trajectory traj =
        run_trajectory(s.u0, cfg.t_final, cfg.stride, cfg.scheme, s.ctx, s.dt_request);
    CauchyTable table = scattering_monitor(traj, s.ctx);

    CsvWriter csv(out_dir + "/cauchy.csv",
                  {"t", "L2_increment", "H1_increment", "boundary_mass"});
    for (const auto& row : table.rows) {
        csv.begin_row();
        csv.cell(row.t);
        csv.cell(row.l2_increment);
        csv.cell(row.h1_increment);
        csv.cell(row.boundary_mass);
        csv.end_row();
    }
    std::ofstream note(out_dir + "/cauchy_note.txt", std::ios::binary);
    note << "monotone decay " << (table.monotone_decay ? "yes" : "no") << "\n";
    if (std::isfinite(table.truncated_at))
        note << "table truncated at t = " << csv_format(table.truncated_at)
             << " (boundary mass above 1%)\n";

    // per-norm time series: instantaneous L^r norms plus the running
    // spacetime accumulations used by the scattering analysis
    {
        CsvWriter nrm(out_dir + "/norms.csv",
                      {"t", "L4x", "L6x", "L9x", "running_L4tx", "running_L3tL9x"});
        const int n = traj.count();
        std::vector<double> l4(n), l6(n), l9(n);
        for (int k = 0; k < n; ++k) {
            l4[k] = lp_norm_pow(traj.at(k), 4.0);
            l6[k] = lp_norm_pow(traj.at(k), 6.0);
            l9[k] = lp_norm_pow(traj.at(k), 9.0);
        }
        for (int k = 0; k < n; ++k) {
            const std::vector<double> w = composite_weights(k, traj.stride);
            double acc4 = 0.0, acc39 = 0.0;
            for (int j = 0; j <= k; ++j) {
                acc4 += w[j] * l4[j];
                acc39 += w[j] * std::pow(l9[j], 3.0 / 9.0);
            }
            nrm.begin_row();
            nrm.cell(traj.times[k]);
            nrm.cell(std::pow(l4[k], 0.25));
            nrm.cell(std::pow(l6[k], 1.0 / 6.0));
            nrm.cell(std::pow(l9[k], 1.0 / 9.0));
            nrm.cell(std::pow(acc4, 0.25));
            nrm.cell(std::pow(acc39, 1.0 / 3.0));
            nrm.end_row();
        }
    }
    emit_plot_script(out_dir, "cauchy.csv",
                     {{2, "L2 increment"}, {3, "H1 increment"}, {4, "boundary mass"}});
    return flush_abort_note(traj, out_dir);
}

int cmd_counterexample(const RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    echo_config(cfg, out_dir);
    Grid grid(cfg.n, cfg.box_half_length);
    GaugePotential gauge = gauge_from_config(cfg, grid);
    SignDemo demo;
    try {
        demo = appendix_sign_demo(gauge,
                                  Vec3{cfg.demo_p[0], cfg.demo_p[1], cfg.demo_p[2]},
                                  Vec3{cfg.demo_x0[0], cfg.demo_x0[1], cfg.demo_x0[2]},
                                  cfg.demo_radius);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config error: ") + e.what());
    }
    std::ostringstream os;
    os << "pointwise sign failure of the weighted curvature source\n"
       << "y_plus  = (" << csv_format(demo.y_plus.x) << ", " << csv_format(demo.y_plus.y)
       << ", " << csv_format(demo.y_plus.z) << ")  value " << csv_format(demo.value_plus)
       << "\n"
       << "y_minus = (" << csv_format(demo.y_minus.x) << ", " << csv_format(demo.y_minus.y)
       << ", " << csv_format(demo.y_minus.z) << ")  value " << csv_format(demo.value_minus)
       << "\n";
    std::cout << os.str();
    std::ofstream out(out_dir + "/counterexample.txt", std::ios::binary);
    out << os.str();
    return (demo.value_plus > 0.0 && demo.value_minus < 0.0) ? 0 : 1;
}

}  // namespace mnls
