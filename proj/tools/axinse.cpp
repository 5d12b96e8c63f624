// Command line front end: scenario runs, cylinder diagnostics, zoom analysis,
// exponent algebra, and local energy inequality checks.  All outputs are
// deterministic (fixed column orders, 17-digit floats, ordered JSON).

#include <filesystem>
#include <iostream>
#include <mutex>

#include <CLI11.hpp>

#include "axinse/config.hpp"
#include "axinse/fields.hpp"
#include "axinse/parallel.hpp"
#include "axinse/pressure.hpp"
#include "axinse/reports.hpp"
#include "axinse/rescaler.hpp"
#include "axinse/snapshot.hpp"
#include "axinse/solver.hpp"

namespace fs = std::filesystem;
using namespace axinse;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::string snapshots_dir;
    int threads = 1;
    int scan = 0;
};

Config load_config(const CommonArgs& args) {
    Config cfg = args.config_path.empty() ? parse_config("") : load_config_file(args.config_path);
    if (!args.out_dir.empty()) cfg.output.dir = args.out_dir;
    return cfg;
}

Trajectory obtain_trajectory(const Config& cfg, const CommonArgs& args) {
    if (!args.snapshots_dir.empty()) return load_trajectory(args.snapshots_dir);
    return run(cfg.scenario);
}

double max_speed(const AxiField& v) {
    double worst = 0.0;
    for (std::size_t k = 0; k < v.v_rho.values.size(); ++k) {
        const double m = v.v_rho.values[k] * v.v_rho.values[k] +
                         v.v_phi.values[k] * v.v_phi.values[k] +
                         v.v_z.values[k] * v.v_z.values[k];
        worst = std::max(worst, m);
    }
    return std::sqrt(worst);
}

int cmd_run(const CommonArgs& args) {
    const Config cfg = load_config(args);
    const Trajectory traj = run(cfg.scenario);
    fs::create_directories(cfg.output.dir);
    save_trajectory(traj, cfg.output.dir + "/snapshots");

    CsvWriter csv(cfg.output.dir + "/run.csv");
    csv.header({"config_hash", "t", "max_v", "kinetic_energy", "max_swirl"});
    const std::string hash = hash_hex(cfg.hash);
    for (const TrajectorySnapshot& snap : traj.snaps) {
        csv.row({hash, format_double(snap.t()), format_double(max_speed(snap.v)),
                 format_double(kinetic_energy(snap.v)),
                 format_double(max_abs(snap.v.v_phi))});
    }
    if (traj.blowup.triggered)
        std::cout << "run terminated by blow-up report at t = " << traj.blowup.t << " (step "
                  << traj.blowup.step << "): " << traj.blowup.reason << "\n";
    std::cout << "wrote " << traj.snaps.size() << " snapshots to " << cfg.output.dir
              << "/snapshots\n";
    return 0;
}

int cmd_diagnose(const CommonArgs& args) {
    const Config cfg = load_config(args);
    const Trajectory traj = obtain_trajectory(cfg, args);
    fs::create_directories(cfg.output.dir);
    const DiagnosticsConfig& d = cfg.diagnostics;
    const double t0 = d.cylinder_t0 ? *d.cylinder_t0 : traj.t_last();

    std::vector<FunctionalReport> ladder(d.radii.size());
    parallel_for(d.radii.size(), args.threads, [&](std::size_t k) {
        ladder[k] = compute_functionals(traj, ParabolicCylinder(d.cylinder_b, t0, d.radii[k]),
                                        d.mixed_norms);
    });
    validate_report_ladder(ladder);

    std::vector<std::vector<InterpolationAudit>> audits(ladder.size());
    for (std::size_t k = 0; k < ladder.size(); ++k)
        for (const MixedNormSpec& spec : d.mixed_norms)
            audits[k].push_back(interpolation_audit(ladder[k], spec.s, spec.l));

    const std::string hash = hash_hex(cfg.hash);
    if (cfg.output.csv) {
        std::vector<std::string> cols = {"config_hash", "b", "t0", "r", "A", "E", "C", "D", "H"};
        for (const MixedNormSpec& spec : d.mixed_norms) cols.push_back(mixed_norm_label(spec));
        cols.insert(cols.end(), {"sup_sqrt_t", "sup_xprime", "sup_swirl"});
        for (const MixedNormSpec& spec : d.mixed_norms)
            cols.push_back("ratio" + mixed_norm_label(spec).substr(1));
        cols.push_back("sup_convention");
        CsvWriter csv(cfg.output.dir + "/reports.csv");
        csv.header(cols);
        for (std::size_t k = 0; k < ladder.size(); ++k) {
            const FunctionalReport& rep = ladder[k];
            std::vector<std::string> row = {hash,
                                            format_double(rep.cylinder.b),
                                            format_double(rep.cylinder.t0),
                                            format_double(rep.cylinder.r),
                                            format_double(rep.A),
                                            format_double(rep.E),
                                            format_double(rep.C),
                                            format_double(rep.D),
                                            format_double(rep.H)};
            for (const MixedNormValue& mv : rep.M) row.push_back(format_double(mv.value));
            row.push_back(format_double(rep.monitors.sup_sqrt_t));
            row.push_back(format_double(rep.monitors.sup_xprime));
            row.push_back(format_double(rep.monitors.sup_swirl));
            for (const InterpolationAudit& a : audits[k]) row.push_back(format_double(a.ratio));
            row.push_back(rep.sup_convention);
            csv.row(row);
        }
    }
    if (cfg.output.json) {
        std::ofstream out(cfg.output.dir + "/reports.json");
        out << functional_reports_json(ladder, audits, cfg);
    }

    const TypeOneMonitors mon = type1_monitors(traj, t0, d.monitor_r1);
    if (cfg.output.csv) {
        CsvWriter csv(cfg.output.dir + "/monitors.csv");
        csv.header({"config_hash", "t", "G", "M"});
        for (std::size_t k = 0; k < mon.times.size(); ++k)
            csv.row({hash, format_double(mon.times[k]), format_double(mon.g_series[k]),
                     format_double(mon.m_series[k])});
        CsvWriter sum(cfg.output.dir + "/monitors_summary.csv");
        sum.header({"config_hash", "t0", "r1", "sup_sqrt_t", "sup_xprime", "sup_swirl",
                    "epsilon_star"});
        sum.row({hash, format_double(mon.t0), format_double(mon.r1),
                 format_double(mon.suprema.sup_sqrt_t), format_double(mon.suprema.sup_xprime),
                 format_double(mon.suprema.sup_swirl), format_double(mon.epsilon_star)});
    }
    std::cout << "diagnose: " << ladder.size() << " cylinders at t0 = " << t0 << "\n";
    return 0;
}

int cmd_zoom(const CommonArgs& args) {
    const Config cfg = load_config(args);
    const Trajectory traj = obtain_trajectory(cfg, args);
    fs::create_directories(cfg.output.dir);
    const RescalerConfig& rc = cfg.rescaler;

    PeakOptions popts;
    popts.ratio = rc.record_ratio;
    const std::vector<PeakRecord> records = detect_peaks(traj, rc.r1, popts);
    if (records.size() <= 1)
        std::cout << "no blow-up records beyond k = 0\n";

    ZoomOptions zopts;
    zopts.n_rho = rc.zoom_n_rho;
    zopts.n_z = rc.zoom_n_z;
    zopts.n_t = rc.zoom_n_t;
    zopts.convention = rc.convention;

    std::vector<ZoomSnapshot> snaps(records.size());
    std::vector<ZoomVerification> checks(records.size());
    std::vector<std::string> status(records.size(), "zoomed");
    std::mutex io_mutex;
    parallel_for(records.size(), args.threads, [&](std::size_t k) {
        try {
            snaps[k] = zoom(traj, records[k], rc.window, zopts);
            checks[k] = verify_zoom(snaps[k], traj, cfg.diagnostics.mixed_norms, rc.ladder);
        } catch (const Error& e) {
            std::lock_guard<std::mutex> lk(io_mutex);
            status[k] = std::string("skipped: ") + e.what();
        }
    });

    const std::string hash = hash_hex(cfg.hash);
    if (cfg.output.csv) {
        CsvWriter csv(cfg.output.dir + "/zooms.csv");
        csv.header({"config_hash", "k", "t_k", "rho_k", "z_k", "M_k", "lambda", "window",
                    "status", "normalization", "normalization_ok", "sup_u", "bounded_ok",
                    "interp_tolerance", "transport_error_max", "functional_sum_max"});
        for (std::size_t k = 0; k < records.size(); ++k) {
            const bool ok = status[k] == "zoomed";
            double transport_max = 0.0;
            if (ok)
                for (double e : checks[k].transport_error)
                    transport_max = std::max(transport_max, e);
            csv.row({hash, std::to_string(records[k].k), format_double(records[k].t_k),
                     format_double(records[k].rho_k), format_double(records[k].z_k),
                     format_double(records[k].M_k),
                     ok ? format_double(snaps[k].lambda) : "",
                     format_double(rc.window), status[k],
                     ok ? format_double(checks[k].normalization) : "",
                     ok ? (checks[k].normalization_ok ? "true" : "false") : "",
                     ok ? format_double(checks[k].sup_u) : "",
                     ok ? (checks[k].bounded_ok ? "true" : "false") : "",
                     ok ? format_double(snaps[k].interp_tolerance) : "",
                     ok ? format_double(transport_max) : "",
                     ok ? format_double(checks[k].functional_sum_max) : ""});
        }

        CsvWriter hcsv(cfg.output.dir + "/holder.csv");
        hcsv.header({"config_hash", "k_from", "k_to", "distance"});
        for (std::size_t k = 0; k + 1 < records.size(); ++k) {
            if (status[k] != "zoomed" || status[k + 1] != "zoomed") continue;
            const double dist = holder_distance(snaps[k], snaps[k + 1]);
            hcsv.row({hash, std::to_string(records[k].k), std::to_string(records[k + 1].k),
                      format_double(dist)});
        }
    }
    if (cfg.output.json) {
        std::vector<ZoomSnapshot> kept;
        std::vector<ZoomVerification> kept_checks;
        for (std::size_t k = 0; k < records.size(); ++k) {
            if (status[k] != "zoomed") continue;
            kept.push_back(snaps[k]);
            kept_checks.push_back(checks[k]);
        }
        std::ofstream out(cfg.output.dir + "/zooms.json");
        out << zoom_verifications_json(kept, kept_checks, cfg);
    }

    fs::create_directories(cfg.output.dir + "/zooms");
    for (std::size_t k = 0; k < records.size(); ++k) {
        if (status[k] != "zoomed") continue;
        SnapshotMeta meta;
        meta.set("k", records[k].k);
        meta.set("lambda", snaps[k].lambda);
        meta.set("t_k", records[k].t_k);
        meta.set("rho_k", records[k].rho_k);
        meta.set("z_k", records[k].z_k);
        meta.set("M_k", records[k].M_k);
        meta.set("window", snaps[k].a);
        for (std::size_t j = 0; j < snaps[k].u.size(); ++j) {
            char name[96];
            std::snprintf(name, sizeof(name), "%s/zooms/zoom_k%03d_s%03zu.axs",
                          cfg.output.dir.c_str(), records[k].k, j);
            write_velocity_snapshot(name, snaps[k].u[j], meta);
        }
    }
    std::cout << "zoom: " << records.size() << " records processed\n";
    return 0;
}

int cmd_exponents(const CommonArgs& args) {
    const Config cfg = load_config(args);
    fs::create_directories(cfg.output.dir);

    std::vector<ExponentReport> reports;
    for (const MixedNormSpec& spec : cfg.diagnostics.mixed_norms)
        reports.push_back(exponent_report(spec.s, spec.l));
    if (cfg.output.json) {
        std::ofstream out(cfg.output.dir + "/exponents.json");
        out << exponent_reports_json(reports);
    }

    if (args.scan > 0) {
        const ScanResult scan = scan_feasible_region(args.scan);
        CsvWriter csv(cfg.output.dir + "/scan.csv");
        csv.header({"config_hash", "x", "y", "feasible", "alpha1", "alpha2", "alpha3"});
        const std::string hash = hash_hex(cfg.hash);
        for (const ScanPoint& p : scan.points) {
            csv.row({hash, rational_string(p.x), rational_string(p.y),
                     p.feasible ? "true" : "false",
                     p.degenerate ? "" : rational_string(p.alpha1),
                     p.degenerate ? "" : rational_string(p.alpha2),
                     p.degenerate ? "" : rational_string(p.alpha3)});
        }
        std::cout << "scan " << args.scan << ": " << scan.feasible_count
                  << " feasible points; l<2 with s>1 present: "
                  << (scan.has_l_below_2_s_above_1 ? "yes" : "no") << "\n";
    }
    std::cout << "exponent reports written for " << reports.size() << " pairs\n";
    return 0;
}

int cmd_energy_check(const CommonArgs& args) {
    const Config cfg = load_config(args);
    const Trajectory traj = obtain_trajectory(cfg, args);
    fs::create_directories(cfg.output.dir);
    const DiagnosticsConfig& d = cfg.diagnostics;

    CutoffBump cutoff;
    cutoff.b = d.cylinder_b;
    cutoff.r_flat = d.cutoff_flat;
    cutoff.r_supp = d.cutoff_supp;
    cutoff.t_start = traj.t_first();
    cutoff.t_flat = traj.t_first() + d.cutoff_ramp;

    std::vector<double> times = d.energy_times;
    if (times.empty()) {
        for (const TrajectorySnapshot& snap : traj.snaps)
            if (snap.t() > cutoff.t_flat + 1e-12) times.push_back(snap.t());
    }
    if (times.empty()) throw InvalidArgumentError("no sample times after the cutoff plateau");

    CsvWriter csv(cfg.output.dir + "/energy.csv");
    csv.header({"config_hash", "t", "lhs", "rhs", "slack", "declared_tolerance", "pass"});
    const std::string hash = hash_hex(cfg.hash);
    bool all_pass = true;
    for (double t : times) {
        const EnergyInequalityReport rep = check_energy_inequality(traj, cutoff, t);
        const bool pass = rep.slack >= -rep.declared_tolerance;
        all_pass = all_pass && pass;
        csv.row({hash, format_double(t), format_double(rep.lhs), format_double(rep.rhs),
                 format_double(rep.slack), format_double(rep.declared_tolerance),
                 pass ? "true" : "false"});
    }
    std::cout << "energy-check: " << times.size() << " samples, "
              << (all_pass ? "all within tolerance" : "violations found") << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"axisymmetric Navier-Stokes swirl solver and Type I diagnostics"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", args.config_path, "config file path");
        if (needs_config) opt->required();
        sub->add_option("--out", args.out_dir, "output directory (overrides config)");
        sub->add_option("--threads", args.threads, "worker threads for independent reports");
        return sub;
    };

    auto* run_cmd = add_common(app.add_subcommand("run", "integrate a scenario"), true);
    auto* diag_cmd =
        add_common(app.add_subcommand("diagnose", "scale-invariant functionals"), true);
    diag_cmd->add_option("--snapshots", args.snapshots_dir, "existing snapshot directory");
    auto* zoom_cmd = add_common(app.add_subcommand("zoom", "peak detection and rescaling"), true);
    zoom_cmd->add_option("--snapshots", args.snapshots_dir, "existing snapshot directory");
    auto* exp_cmd =
        add_common(app.add_subcommand("exponents", "exponent algebra and region scan"), false);
    exp_cmd->add_option("--scan", args.scan, "feasible-region scan resolution");
    auto* energy_cmd =
        add_common(app.add_subcommand("energy-check", "local energy inequality audit"), true);
    energy_cmd->add_option("--snapshots", args.snapshots_dir, "existing snapshot directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(args);
        if (diag_cmd->parsed()) return cmd_diagnose(args);
        if (zoom_cmd->parsed()) return cmd_zoom(args);
        if (exp_cmd->parsed()) return cmd_exponents(args);
        if (energy_cmd->parsed()) return cmd_energy_check(args);
    } catch (const Error& e) {
        std::cerr << "{\"error\": \"" << e.what() << "\"}\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\": \"unexpected: " << e.what() << "\"}\n";
        return 2;
    }
    return 0;
}
