#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dplab/characteristics.hpp"
#include "dplab/config.hpp"
#include "dplab/csvio.hpp"
#include "dplab/evolution.hpp"
#include "dplab/functionals.hpp"
#include "dplab/multipeakon.hpp"
#include "dplab/profiles.hpp"
#include "dplab/rng.hpp"
#include "dplab/stability.hpp"
#include "dplab/svg.hpp"

namespace dplab {

enum class ScenarioKind {
    stability_run,
    peakon_translation,
    collision,
    blowup,
    certificate_sweep,
    shock_residual
};

inline const char* to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::stability_run: return "stability_run";
        case ScenarioKind::peakon_translation: return "peakon_translation";
        case ScenarioKind::collision: return "collision";
        case ScenarioKind::blowup: return "blowup";
        case ScenarioKind::certificate_sweep: return "certificate_sweep";
        default: return "shock_residual";
    }
}

inline ScenarioKind scenario_kind_from(const std::string& name) {
    if (name == "stability_run") return ScenarioKind::stability_run;
    if (name == "peakon_translation") return ScenarioKind::peakon_translation;
    if (name == "collision") return ScenarioKind::collision;
    if (name == "blowup") return ScenarioKind::blowup;
    if (name == "certificate_sweep") return ScenarioKind::certificate_sweep;
    if (name == "shock_residual") return ScenarioKind::shock_residual;
    throw ConfigError("config: unknown scenario kind '" + name + "'");
}

struct SignedBump {
    double center = 0.0;
    double mass = 0.0;  // sign allowed only in the blow-up scenario
    double width = 0.0;
    BumpShape shape = BumpShape::gaussian;
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::stability_run;
    int grid_n = 4096;
    double grid_l = 40.0;
    uint64_t seed = 0;
    std::string out_dir = "out";
    SolverConfig solver;
    double c = 1.0;
    double eps = 0.01;
    double mollify_width = 0.02;
    std::vector<SignedBump> bumps;          // blowup
    std::vector<PeakonParticle> particles;  // collision
    bool expect_event = true;               // collision/blowup expectation
    double shock_k = 1.0;
    std::vector<double> shock_times{0.5};
    int shock_refinements = 3;
    int sweep_count = 200;
    std::map<std::string, double> tolerances;
    std::string raw_config_text;
};

namespace detail {

inline const std::vector<std::string>& allowed_keys() {
    static const std::vector<std::string> keys = {
        "scenario", "out", "seed", "grid.n", "grid.l",
        "solver.t_end", "solver.dt", "solver.cfl", "solver.dealias", "solver.record_every",
        "solver.blowup_threshold",
        "profile.c", "profile.eps", "profile.mollify_width",
        "measure.*.shape", "measure.*.center", "measure.*.mass", "measure.*.width",
        "particles.*.p", "particles.*.q",
        "expect_event",
        "shock.k", "shock.times", "shock.refinements",
        "sweep.count",
        "tolerance.l2_error", "tolerance.drift", "tolerance.residual", "tolerance.margin",
        "tolerance.away_residual",
    };
    return keys;
}

}  // namespace detail

inline ScenarioConfig load_scenario(const Config& cfg, bool strict = true) {
    if (strict) cfg.check_keys(detail::allowed_keys());
    ScenarioConfig sc;
    sc.kind = scenario_kind_from(cfg.require_string("scenario"));
    sc.grid_n = cfg.get_int("grid.n", 4096);
    sc.grid_l = cfg.get_double("grid.l", 40.0);
    sc.seed = static_cast<uint64_t>(cfg.get_int("seed", 0));
    sc.out_dir = cfg.get_string("out", "out/" + std::string(to_string(sc.kind)));
    sc.solver.t_end = cfg.get_double("solver.t_end", 50.0);
    sc.solver.dt = cfg.get_double("solver.dt", 0.0);
    sc.solver.cfl = cfg.get_double("solver.cfl", 0.3);
    sc.solver.dealias = cfg.get_bool("solver.dealias", true);
    sc.solver.record_every = cfg.get_int("solver.record_every", 40);
    sc.solver.blowup_slope_threshold = cfg.get_double("solver.blowup_threshold", -100.0);
    sc.c = cfg.get_double("profile.c", 1.0);
    sc.eps = cfg.get_double("profile.eps", 0.01);
    sc.mollify_width = cfg.get_double("profile.mollify_width", 0.02);
    sc.expect_event = cfg.get_bool("expect_event", true);
    sc.shock_k = cfg.get_double("shock.k", 1.0);
    sc.shock_times = cfg.get_double_list("shock.times", {0.5});
    sc.shock_refinements = cfg.get_int("shock.refinements", 3);
    sc.sweep_count = cfg.get_int("sweep.count", 200);
    for (const char* name :
         {"l2_error", "drift", "residual", "margin", "away_residual"}) {
        const std::string key = std::string("tolerance.") + name;
        if (cfg.has(key)) sc.tolerances[name] = cfg.get_double(key, 0.0);
    }

    for (int i : cfg.indexed_entries("measure")) {
        const std::string p = "measure." + std::to_string(i) + ".";
        SignedBump b;
        b.center = cfg.get_double(p + "center", 0.0);
        b.mass = cfg.get_double(p + "mass", 0.0);
        b.width = cfg.get_double(p + "width", 0.2);
        const std::string shape = cfg.get_string(p + "shape", "gaussian");
        if (shape == "gaussian")
            b.shape = BumpShape::gaussian;
        else if (shape == "triangular")
            b.shape = BumpShape::triangular;
        else
            throw ConfigError("config: unknown bump shape '" + shape + "'");
        sc.bumps.push_back(b);
    }
    for (int i : cfg.indexed_entries("particles")) {
        const std::string p = "particles." + std::to_string(i) + ".";
        sc.particles.push_back({cfg.get_double(p + "p", 0.0), cfg.get_double(p + "q", 0.0)});
    }
    if (sc.kind != ScenarioKind::blowup)
        for (const auto& b : sc.bumps)
            if (b.mass < 0.0)
                throw ConfigError("config: negative bump mass outside the blowup scenario");
    sc.raw_config_text = cfg.raw_text();
    return sc;
}

struct RunArtifact {
    ScenarioKind kind = ScenarioKind::stability_run;
    std::string dir;
    bool pass = false;
    int exit_status = 0;  // 0 pass, 1 verdict fail, 3 numeric failure
    std::map<std::string, std::string> verdict;
};

namespace detail {

struct VerdictWriter {
    std::map<std::string, std::string> entries;
    std::vector<std::string> order;

    void set(const std::string& key, const std::string& value) {
        if (!entries.count(key)) order.push_back(key);
        entries[key] = value;
    }
    void set_num(const std::string& key, double value) { set(key, format_double(value)); }
    void set_bool(const std::string& key, bool value) { set(key, value ? "true" : "false"); }

    void write(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path);
        for (const auto& key : order) out << key << " = " << entries.at(key) << "\n";
    }
};

inline void write_config_echo(const std::string& path, const ScenarioConfig& sc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << sc.raw_config_text;
    out << "\n# --- resolved defaults ---\n";
    out << "# scenario = " << to_string(sc.kind) << "\n";
    out << "# grid.n = " << sc.grid_n << "\n";
    out << "# grid.l = " << format_double(sc.grid_l) << "\n";
    out << "# seed = " << sc.seed << "\n";
    out << "# solver.t_end = " << format_double(sc.solver.t_end) << "\n";
    out << "# solver.dt = " << format_double(sc.solver.dt) << "\n";
    out << "# solver.cfl = " << format_double(sc.solver.cfl) << "\n";
    out << "# solver.dealias = " << (sc.solver.dealias ? "true" : "false") << "\n";
    out << "# solver.record_every = " << sc.solver.record_every << "\n";
    out << "# solver.blowup_threshold = " << format_double(sc.solver.blowup_slope_threshold)
        << "\n";
    out << "# profile.c = " << format_double(sc.c) << "\n";
    out << "# profile.eps = " << format_double(sc.eps) << "\n";
    out << "# profile.mollify_width = " << format_double(sc.mollify_width) << "\n";
}

inline void write_snapshots(const std::string& dir, const Trajectory& traj) {
    std::filesystem::create_directories(dir);
    for (size_t i = 0; i < traj.snapshots.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "snap_%06zu.bin", i);
        write_snapshot(dir + "/" + name, traj.snapshots[i], traj.times[i]);
    }
}

inline void write_series_csv(const std::string& path, const std::string& kind,
                             const std::vector<std::string>& columns,
                             const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "# " << kCsvVersion << " " << kind << "\n";
    for (size_t i = 0; i < columns.size(); ++i)
        out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << format_double(row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
}

inline double tolerance_or(const ScenarioConfig& sc, const std::string& name, double fallback) {
    auto it = sc.tolerances.find(name);
    return it == sc.tolerances.end() ? fallback : it->second;
}

inline void run_stability(const ScenarioConfig& sc, const std::string& dir, VerdictWriter& vw,
                          bool& pass) {
    const Grid grid = make_grid(sc.grid_l, sc.grid_n);
    const Field u0 = perturbed_peakon(sc.c, sc.eps, sc.seed, grid, sc.mollify_width);
    const Trajectory traj = evolve(u0, sc.solver);
    vw.set("termination", to_string(traj.termination));
    if (traj.termination == Termination::error)
        throw std::runtime_error("stability_run: solver failed");

    const Theorem1Verdict verdict = theorem1_verify(traj, sc.c, sc.eps);
    write_invariant_csv(dir + "/invariants.csv", traj.records);
    write_snapshots(dir + "/snapshots", traj);

    std::vector<StabilityCertificate> certs;
    for (const Field& snap : traj.snapshots) certs.push_back(gh_certificate(snap));
    write_certificate_csv(dir + "/certificates.csv", traj.times, certs);

    std::vector<std::vector<double>> rows;
    for (const auto& s : verdict.samples)
        rows.push_back({s.time, s.distance, s.m1, s.pair_sum});
    write_series_csv(dir + "/stability.csv", "stability",
                     {"t", "x_distance", "M1", "pair_sum"}, rows);

    pass = verdict.pass;
    vw.set_bool("pass", verdict.pass);
    vw.set_num("c", sc.c);
    vw.set_num("eps", sc.eps);
    vw.set_num("distance_bound", verdict.distance_bound);
    vw.set_num("m1_band", verdict.m1_band);
    vw.set_num("sum_bound", verdict.sum_bound);
    vw.set_num("sup_x_distance", verdict.worst_distance);
    vw.set_num("sup_x_distance_time", verdict.worst_distance_time);
    vw.set_num("max_m1_deviation", verdict.worst_m1_dev);
    vw.set_num("max_m1_deviation_time", verdict.worst_m1_time);
    vw.set_num("max_pair_sum", verdict.worst_sum);
    vw.set_num("max_pair_sum_time", verdict.worst_sum_time);
    const double e2_0 = traj.records.front().e2, e3_0 = traj.records.front().e3;
    double drift = 0.0;
    for (const auto& r : traj.records) {
        drift = std::max(drift, std::fabs(r.e2 - e2_0) / std::fabs(e2_0));
        drift = std::max(drift, std::fabs(r.e3 - e3_0) / std::fabs(e3_0));
    }
    vw.set_num("max_invariant_drift", drift);
}

inline void run_peakon_translation(const ScenarioConfig& sc, const std::string& dir,
                                   VerdictWriter& vw, bool& pass) {
    const Grid grid = make_grid(sc.grid_l, sc.grid_n);
    const Field u0 = mollified_peakon(sc.c, 0.0, grid, sc.mollify_width);
    const Trajectory traj = evolve(u0, sc.solver);
    vw.set("termination", to_string(traj.termination));
    if (traj.termination != Termination::completed)
        throw std::runtime_error("peakon_translation: run did not complete");
    write_invariant_csv(dir + "/invariants.csv", traj.records);
    write_snapshots(dir + "/snapshots", traj);

    const Field exact = translate(traj.initial(), sc.c * sc.solver.t_end);
    const Field diff = traj.final_state() - exact;
    Field d2(grid), n2(grid);
    for (int j = 0; j < grid.point_count; ++j) {
        d2[j] = diff[j] * diff[j];
        n2[j] = traj.initial()[j] * traj.initial()[j];
    }
    const double rel_l2 = std::sqrt(integrate(d2) / integrate(n2));
    const double e2_0 = traj.records.front().e2, e3_0 = traj.records.front().e3;
    double drift = 0.0;
    for (const auto& r : traj.records) {
        drift = std::max(drift, std::fabs(r.e2 - e2_0) / std::fabs(e2_0));
        drift = std::max(drift, std::fabs(r.e3 - e3_0) / std::fabs(e3_0));
    }
    const double tol_l2 = tolerance_or(sc, "l2_error", 1e-3);
    const double tol_drift = tolerance_or(sc, "drift", 1e-6);
    pass = rel_l2 < tol_l2 && drift < tol_drift;
    vw.set_bool("pass", pass);
    vw.set_num("relative_l2_error", rel_l2);
    vw.set_num("l2_tolerance", tol_l2);
    vw.set_num("max_invariant_drift", drift);
    vw.set_num("drift_tolerance", tol_drift);
}

inline void run_collision(const ScenarioConfig& sc, const std::string& dir, VerdictWriter& vw,
                          bool& pass) {
    if (sc.particles.empty())
        throw ConfigError("collision scenario requires particles.*.p / particles.*.q");
    PeakonState s0;
    s0.particles = sc.particles;
    const int every = std::max(1, sc.solver.record_every);
    const PeakonHistory hist =
        multipeakon_evolve(s0, sc.solver.t_end, sc.solver.dt > 0.0 ? sc.solver.dt : 1e-3, every);

    std::vector<std::string> cols{"t"};
    for (size_t i = 0; i < sc.particles.size(); ++i) {
        cols.push_back("p" + std::to_string(i));
        cols.push_back("q" + std::to_string(i));
    }
    std::vector<std::vector<double>> rows;
    for (size_t k = 0; k < hist.states.size(); ++k) {
        std::vector<double> row{hist.times[k]};
        for (const auto& part : hist.states[k].particles) {
            row.push_back(part.amplitude);
            row.push_back(part.position);
        }
        rows.push_back(std::move(row));
    }
    write_series_csv(dir + "/particles.csv", "particles", cols, rows);

    const bool collided = hist.termination == PeakonTermination::collision_detected;
    if (hist.termination == PeakonTermination::error)
        throw std::runtime_error("collision: particle integration failed");
    pass = collided == sc.expect_event;
    vw.set_bool("pass", pass);
    vw.set("termination", collided ? "collision_detected" : "completed");
    vw.set_bool("collision_detected", collided);
    if (collided) vw.set_num("collision_time", hist.collision_time);
}

inline void run_blowup(const ScenarioConfig& sc, const std::string& dir, VerdictWriter& vw,
                       bool& pass) {
    if (sc.bumps.empty()) throw ConfigError("blowup scenario requires measure.*");
    std::vector<SignedBump> bumps = sc.bumps;
    std::sort(bumps.begin(), bumps.end(),
              [](const SignedBump& a, const SignedBump& b) { return a.center < b.center; });
    bool seen_negative = false;
    for (const auto& b : bumps) {
        if (b.mass < 0.0) seen_negative = true;
        else if (seen_negative)
            throw ConfigError("blowup: signed masses must run plus-to-minus in x");
    }
    const Grid grid = make_grid(sc.grid_l, sc.grid_n);
    Field y0(grid);
    for (int j = 0; j < grid.point_count; ++j) {
        double acc = 0.0;
        for (const auto& b : bumps) {
            BumpSpec unsigned_bump{b.center, std::fabs(b.mass), b.width, b.shape};
            const double d = grid.circular_distance(grid.node(j), b.center);
            acc += (b.mass < 0.0 ? -1.0 : 1.0) * detail::bump_density(unsigned_bump, d);
        }
        y0[j] = acc;
    }
    const Field u0 = helmholtz_inverse(y0, 1.0);
    const Trajectory traj = evolve(u0, sc.solver);
    write_invariant_csv(dir + "/invariants.csv", traj.records);
    write_snapshots(dir + "/snapshots", traj);
    if (traj.termination == Termination::error)
        throw std::runtime_error("blowup: solver failed before detection");

    const bool detected = traj.termination == Termination::blowup_detected;
    // Slope monotonicity over the trailing 20% of records.
    bool monotone = true;
    const size_t m = traj.records.size();
    const size_t start = m - std::max<size_t>(2, m / 5);
    for (size_t i = start + 1; i < m; ++i)
        monotone = monotone && traj.records[i].min_slope <= traj.records[i - 1].min_slope + 1e-12;

    pass = sc.expect_event ? (detected && monotone) : !detected;
    vw.set_bool("pass", pass);
    vw.set("termination", to_string(traj.termination));
    vw.set_bool("blowup_detected", detected);
    vw.set_bool("final_slope_monotone", monotone);
    vw.set_num("final_time", traj.times.back());
    vw.set_num("final_min_slope", traj.records.back().min_slope);
}

inline void run_certificate_sweep(const ScenarioConfig& sc, const std::string& dir,
                                  VerdictWriter& vw, bool& pass) {
    const Grid grid = make_grid(sc.grid_l, sc.grid_n);
    Rng rng(sc.seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull);
    std::vector<double> index;
    std::vector<StabilityCertificate> certs;
    double worst_res = 0.0, worst_margin = 0.0, worst_chain = 0.0;
    bool positivity_ok = true;
    for (int i = 0; i < sc.sweep_count; ++i) {
        MeasureSpec spec;
        const int nb = rng.uniform_int(1, 4);
        for (int b = 0; b < nb; ++b) {
            BumpSpec bump;
            bump.center = rng.uniform(-10.0, 10.0);
            bump.width = rng.uniform(0.15, 0.8);
            bump.mass = rng.uniform(0.2, 2.0);
            bump.shape = rng.uniform() < 0.5 ? BumpShape::gaussian : BumpShape::triangular;
            spec.bumps.push_back(bump);
        }
        const Field u = field_from_measure(spec, grid);
        const StabilityCertificate cert = gh_certificate(u);
        const PositivityReport pos = positivity_certificate(u, 1.0, 2.0);
        positivity_ok = positivity_ok && pos.all_pass;
        worst_res = std::max({worst_res, cert.residual_e2 / std::max(1e-30, cert.e2),
                              cert.residual_e3 / std::max(1e-30, std::fabs(cert.e3))});
        worst_margin = std::min(worst_margin, cert.margin_318);
        worst_chain = std::min({worst_chain, cert.chain_lower, cert.chain_upper});
        index.push_back(static_cast<double>(i));
        certs.push_back(cert);
    }
    write_certificate_csv(dir + "/certificates.csv", index, certs);
    const double tol_res = tolerance_or(sc, "residual", 1e-6);
    const double tol_margin = tolerance_or(sc, "margin", 1e-8);
    pass = worst_res < tol_res && worst_margin >= -tol_margin && worst_chain >= -1e-10 &&
           positivity_ok;
    vw.set_bool("pass", pass);
    vw.set_num("samples", sc.sweep_count);
    vw.set_num("worst_relative_residual", worst_res);
    vw.set_num("worst_margin_318", worst_margin);
    vw.set_num("worst_chain_margin", worst_chain);
    vw.set_bool("positivity_all_pass", positivity_ok);
}

inline void run_shock_residual(const ScenarioConfig& sc, const std::string& dir,
                               VerdictWriter& vw, bool& pass) {
    const int levels = std::max(2, sc.shock_refinements);
    std::vector<std::vector<double>> rows;
    std::vector<double> max_per_level(static_cast<size_t>(levels), 0.0);
    double finest_away = 0.0;
    for (int lev = 0; lev < levels; ++lev) {
        const int n = sc.grid_n >> (levels - 1 - lev);
        if (n < 16) throw ConfigError("shock_residual: refinement underflows the grid");
        const Grid grid = make_grid(sc.grid_l, n);
        const WeakResidualReport rep = shock_weak_residual(sc.shock_k, grid, sc.shock_times);
        for (const auto& e : rep.entries)
            rows.push_back({static_cast<double>(lev), static_cast<double>(n), e.time, e.center,
                            e.width, e.residual, e.away_from_singularity ? 1.0 : 0.0});
        max_per_level[static_cast<size_t>(lev)] = rep.max_residual;
        if (lev == levels - 1) finest_away = rep.max_residual_away;
    }
    write_series_csv(dir + "/residuals.csv", "shock_residuals",
                     {"level", "n", "t", "center", "width", "residual", "away"}, rows);
    double min_order = std::numeric_limits<double>::infinity();
    for (int lev = 1; lev < levels; ++lev) {
        const double order = std::log2(max_per_level[static_cast<size_t>(lev - 1)] /
                                       max_per_level[static_cast<size_t>(lev)]);
        min_order = std::min(min_order, order);
        vw.set_num("order_level_" + std::to_string(lev), order);
    }
    const double tol_away = tolerance_or(sc, "away_residual", 1e-8);
    pass = min_order >= 1.0 && finest_away < tol_away;
    vw.set_bool("pass", pass);
    vw.set_num("min_observed_order", min_order);
    vw.set_num("finest_away_residual", finest_away);
    vw.set_num("away_tolerance", tol_away);
}

}  // namespace detail

/// Executes the configured scenario end to end; artifacts are assembled in a
/// scratch directory and renamed into place only on success.
inline RunArtifact run_scenario(const ScenarioConfig& sc) {
    namespace fs = std::filesystem;
    const fs::path target(sc.out_dir);
    const fs::path scratch(sc.out_dir + ".partial");
    fs::remove_all(scratch);
    fs::create_directories(scratch);

    RunArtifact art;
    art.kind = sc.kind;
    art.dir = sc.out_dir;

    detail::VerdictWriter vw;
    vw.set("scenario", to_string(sc.kind));
    bool pass = false;
    try {
        detail::write_config_echo((scratch / "config.echo").string(), sc);
        switch (sc.kind) {
            case ScenarioKind::stability_run:
                detail::run_stability(sc, scratch.string(), vw, pass);
                break;
            case ScenarioKind::peakon_translation:
                detail::run_peakon_translation(sc, scratch.string(), vw, pass);
                break;
            case ScenarioKind::collision:
                detail::run_collision(sc, scratch.string(), vw, pass);
                break;
            case ScenarioKind::blowup:
                detail::run_blowup(sc, scratch.string(), vw, pass);
                break;
            case ScenarioKind::certificate_sweep:
                detail::run_certificate_sweep(sc, scratch.string(), vw, pass);
                break;
            case ScenarioKind::shock_residual:
                detail::run_shock_residual(sc, scratch.string(), vw, pass);
                break;
        }
    } catch (const ConfigError&) {
        fs::remove_all(scratch);
        throw;
    } catch (const std::exception& e) {
        vw.set_bool("pass", false);
        vw.set("numeric_failure", e.what());
        vw.set("exit_status", "3");
        vw.write((scratch / "verdict.txt").string());
        fs::remove_all(target);
        fs::rename(scratch, target);
        art.pass = false;
        art.exit_status = 3;
        art.verdict = vw.entries;
        return art;
    }

    art.pass = pass;
    art.exit_status = pass ? 0 : 1;
    vw.set("exit_status", std::to_string(art.exit_status));
    vw.write((scratch / "verdict.txt").string());
    fs::remove_all(target);
    fs::rename(scratch, target);
    art.verdict = vw.entries;
    return art;
}

/// Certificates only, no evolution: builds the scenario's initial data and
/// evaluates the static certificates on it.
inline RunArtifact run_verify_only(const ScenarioConfig& sc) {
    if (sc.kind == ScenarioKind::certificate_sweep || sc.kind == ScenarioKind::shock_residual)
        return run_scenario(sc);

    namespace fs = std::filesystem;
    const fs::path target(sc.out_dir);
    const fs::path scratch(sc.out_dir + ".partial");
    fs::remove_all(scratch);
    fs::create_directories(scratch);

    const Grid grid = make_grid(sc.grid_l, sc.grid_n);
    Field u0(grid);
    switch (sc.kind) {
        case ScenarioKind::stability_run:
            u0 = perturbed_peakon(sc.c, sc.eps, sc.seed, grid, sc.mollify_width);
            break;
        case ScenarioKind::peakon_translation:
            u0 = mollified_peakon(sc.c, 0.0, grid, sc.mollify_width);
            break;
        case ScenarioKind::collision: {
            PeakonState s0;
            s0.particles = sc.particles;
            u0 = multipeakon_field(s0, grid);
            break;
        }
        default:
            throw ConfigError("verify: scenario has no static certificate form");
    }

    detail::VerdictWriter vw;
    vw.set("scenario", to_string(sc.kind));
    vw.set("mode", "verify_only");
    RunArtifact art;
    art.kind = sc.kind;
    art.dir = sc.out_dir;
    try {
        detail::write_config_echo((scratch / "config.echo").string(), sc);
        CertOptions opts;
        if (sc.kind == ScenarioKind::collision) {
            opts.nonsmooth.enabled = true;
            for (const auto& p : sc.particles)
                opts.nonsmooth.kink_positions.push_back(p.position);
        }
        const StabilityCertificate cert = gh_certificate(u0, opts);
        write_certificate_csv((scratch / "certificates.csv").string(), {0.0}, {cert});
        const PositivityReport pos = positivity_certificate(u0, 1.0, 2.0, opts.nonsmooth);
        const double rel_res = std::max(cert.residual_e2 / std::max(1e-30, cert.e2),
                                        cert.residual_e3 / std::max(1e-30, std::fabs(cert.e3)));
        const bool pass = rel_res < detail::tolerance_or(sc, "residual", 1e-6) &&
                          cert.margin_318 >= -detail::tolerance_or(sc, "margin", 1e-8) &&
                          cert.chain_lower >= -1e-10 && cert.chain_upper >= -1e-10;
        vw.set_bool("pass", pass);
        vw.set_num("relative_residual", rel_res);
        vw.set_num("margin_318", cert.margin_318);
        vw.set_num("An", cert.an);
        vw.set_num("Bn", cert.bn);
        vw.set_num("M1", cert.m1);
        vw.set_bool("positivity_all_pass", pos.all_pass);
        art.pass = pass;
        art.exit_status = pass ? 0 : 1;
    } catch (const std::exception& e) {
        vw.set_bool("pass", false);
        vw.set("numeric_failure", e.what());
        art.pass = false;
        art.exit_status = 3;
    }
    vw.set("exit_status", std::to_string(art.exit_status));
    vw.write((scratch / "verdict.txt").string());
    fs::remove_all(target);
    fs::rename(scratch, target);
    art.verdict = vw.entries;
    return art;
}

/// Report emission: SVG plots plus a summary whose numbers are recomputed
/// from the CSVs alone.
inline void emit_report(const std::string& artifact_dir) {
    namespace fs = std::filesystem;
    const fs::path dir(artifact_dir);
    if (!fs::exists(dir / "verdict.txt"))
        throw std::runtime_error("emit_report: no verdict.txt in " + artifact_dir);
    const Config verdict = Config::parse_file((dir / "verdict.txt").string());
    const std::string kind = verdict.require_string("scenario");
    fs::create_directories(dir / "plots");

    std::ofstream summary((dir / "summary.txt").string(), std::ios::binary);
    if (!summary) throw std::runtime_error("emit_report: cannot write summary");
    summary << "scenario = " << kind << "\n";

    auto plot_invariant_drift = [&](const CsvTable& inv) {
        SvgPlot drift("Invariant drift", "t", "relative drift");
        const int tc = inv.column("t");
        for (const char* name : {"E1", "E2", "E3"}) {
            const int c = inv.column(name);
            std::vector<double> ts, ds;
            const double base = inv.rows.front()[static_cast<size_t>(c)];
            for (const auto& row : inv.rows) {
                ts.push_back(row[static_cast<size_t>(tc)]);
                ds.push_back((row[static_cast<size_t>(c)] - base) /
                             (std::fabs(base) > 1e-300 ? std::fabs(base) : 1.0));
            }
            drift.add_series(name, ts, ds);
        }
        drift.write((dir / "plots" / "invariant_drift.svg").string());
    };

    auto load_waterfall = [&]() {
        std::vector<fs::path> snaps;
        const fs::path sdir = dir / "snapshots";
        if (!fs::exists(sdir)) throw std::runtime_error("emit_report: artifact has no snapshots");
        for (const auto& entry : fs::directory_iterator(sdir)) snaps.push_back(entry.path());
        if (snaps.empty()) throw std::runtime_error("emit_report: artifact has no snapshots");
        std::sort(snaps.begin(), snaps.end());
        std::vector<std::vector<double>> curves;
        std::vector<double> times;
        std::vector<double> xs;
        for (const auto& p : snaps) {
            double t = 0.0;
            const Field f = read_snapshot(p.string(), &t);
            if (xs.empty())
                for (int j = 0; j < f.grid.point_count; ++j) xs.push_back(f.grid.node(j));
            curves.push_back(f.values);
            times.push_back(t);
        }
        const double tspan = std::max(1e-12, times.back() - times.front());
        write_waterfall_svg((dir / "plots" / "waterfall.svg").string(), xs, curves, times,
                            1.5 / tspan, "Snapshots over time");
    };

    if (kind == "stability_run") {
        const CsvTable inv = read_csv((dir / "invariants.csv").string());
        const CsvTable stab = read_csv((dir / "stability.csv").string());
        plot_invariant_drift(inv);

        const int tc = stab.column("t"), dc = stab.column("x_distance"),
                  mc = stab.column("M1"), pc = stab.column("pair_sum");
        std::vector<double> ts, dist, m1, psum;
        for (const auto& row : stab.rows) {
            ts.push_back(row[static_cast<size_t>(tc)]);
            dist.push_back(row[static_cast<size_t>(dc)]);
            m1.push_back(row[static_cast<size_t>(mc)]);
            psum.push_back(row[static_cast<size_t>(pc)]);
        }
        const double c = verdict.get_double("c", 1.0);
        SvgPlot dplot("X-distance to the aligned peakon", "t", "||u - c phi(. - xi1)||_X");
        dplot.add_series("distance", ts, dist);
        dplot.add_threshold("3 c eps^{1/4}", verdict.get_double("distance_bound", 0.0));
        dplot.write((dir / "plots" / "x_distance.svg").string());

        SvgPlot mplot("Extrema of v_u", "t", "value");
        mplot.add_series("M1", ts, m1);
        mplot.add_series("pair_sum", ts, psum);
        mplot.add_threshold("c/6 + band", c / 6.0 + verdict.get_double("m1_band", 0.0));
        mplot.add_threshold("c/6 - band", c / 6.0 - verdict.get_double("m1_band", 0.0));
        mplot.write((dir / "plots" / "extrema.svg").string());
        load_waterfall();

        double sup_d = 0.0, sup_m = 0.0, sup_p = 0.0;
        for (size_t i = 0; i < ts.size(); ++i) {
            sup_d = std::max(sup_d, dist[i]);
            sup_m = std::max(sup_m, std::fabs(m1[i] - c / 6.0));
            sup_p = std::max(sup_p, psum[i]);
        }
        summary << "sup_x_distance = " << format_double(sup_d) << "\n";
        summary << "max_m1_deviation = " << format_double(sup_m) << "\n";
        summary << "max_pair_sum = " << format_double(sup_p) << "\n";
        const int e2c = inv.column("E2"), e3c = inv.column("E3");
        double drift = 0.0;
        for (const auto& row : inv.rows) {
            drift = std::max(drift, std::fabs(row[static_cast<size_t>(e2c)] -
                                              inv.rows.front()[static_cast<size_t>(e2c)]) /
                                        std::fabs(inv.rows.front()[static_cast<size_t>(e2c)]));
            drift = std::max(drift, std::fabs(row[static_cast<size_t>(e3c)] -
                                              inv.rows.front()[static_cast<size_t>(e3c)]) /
                                        std::fabs(inv.rows.front()[static_cast<size_t>(e3c)]));
        }
        summary << "max_invariant_drift = " << format_double(drift) << "\n";
    } else if (kind == "blowup") {
        const CsvTable inv = read_csv((dir / "invariants.csv").string());
        const int tc = inv.column("t"), sc_ = inv.column("min_slope");
        std::vector<double> ts, slopes;
        for (const auto& row : inv.rows) {
            ts.push_back(row[static_cast<size_t>(tc)]);
            slopes.push_back(row[static_cast<size_t>(sc_)]);
        }
        SvgPlot plot("Minimum slope", "t", "inf u_x");
        plot.add_series("min_slope", ts, slopes);
        plot.add_threshold("threshold", slopes.empty() ? -100.0 : std::min(-100.0, slopes.back()));
        plot.write((dir / "plots" / "min_slope.svg").string());
        summary << "final_min_slope = " << format_double(slopes.back()) << "\n";
        summary << "final_time = " << format_double(ts.back()) << "\n";
    } else if (kind == "peakon_translation") {
        const CsvTable inv = read_csv((dir / "invariants.csv").string());
        plot_invariant_drift(inv);
        load_waterfall();
        summary << "relative_l2_error = " << verdict.require_string("relative_l2_error") << "\n";
    } else if (kind == "certificate_sweep") {
        const CsvTable certs = read_csv((dir / "certificates.csv").string());
        const int ic = certs.column("t"), r2 = certs.column("residual_E2"),
                  r3 = certs.column("residual_E3"), mg = certs.column("margin_318");
        std::vector<double> idx, res2, res3, margin;
        for (const auto& row : certs.rows) {
            idx.push_back(row[static_cast<size_t>(ic)]);
            res2.push_back(row[static_cast<size_t>(r2)]);
            res3.push_back(row[static_cast<size_t>(r3)]);
            margin.push_back(row[static_cast<size_t>(mg)]);
        }
        SvgPlot plot("Certificate sweep", "sample", "value");
        plot.add_series("residual_E2", idx, res2);
        plot.add_series("residual_E3", idx, res3);
        plot.add_series("margin_318", idx, margin);
        plot.write((dir / "plots" / "certificates.svg").string());
        double worst2 = 0.0, worst3 = 0.0, worstm = 0.0;
        for (size_t i = 0; i < idx.size(); ++i) {
            worst2 = std::max(worst2, res2[i]);
            worst3 = std::max(worst3, res3[i]);
            worstm = std::min(worstm, margin[i]);
        }
        summary << "worst_residual_E2 = " << format_double(worst2) << "\n";
        summary << "worst_residual_E3 = " << format_double(worst3) << "\n";
        summary << "worst_margin_318 = " << format_double(worstm) << "\n";
    } else if (kind == "shock_residual") {
        const CsvTable res = read_csv((dir / "residuals.csv").string());
        const int nc = res.column("n"), rc = res.column("residual");
        std::map<double, double> max_by_n;
        for (const auto& row : res.rows) {
            double& m = max_by_n[row[static_cast<size_t>(nc)]];
            m = std::max(m, row[static_cast<size_t>(rc)]);
        }
        std::vector<double> ns, rs;
        for (const auto& [n, r] : max_by_n) {
            ns.push_back(std::log2(n));
            rs.push_back(std::log10(r));
        }
        SvgPlot plot("Weak residual refinement", "log2 N", "log10 residual");
        plot.add_series("max residual", ns, rs);
        plot.write((dir / "plots" / "residual_refinement.svg").string());
        for (const auto& [n, r] : max_by_n)
            summary << "max_residual_n" << static_cast<long>(n) << " = " << format_double(r)
                    << "\n";
    } else if (kind == "collision") {
        const CsvTable parts = read_csv((dir / "particles.csv").string());
        SvgPlot plot("Peakon positions", "t", "q_i");
        const int tc = parts.column("t");
        std::vector<double> ts;
        for (const auto& row : parts.rows) ts.push_back(row[static_cast<size_t>(tc)]);
        for (size_t c = 0; c < parts.columns.size(); ++c) {
            if (parts.columns[c].rfind('q', 0) != 0) continue;
            std::vector<double> qs;
            for (const auto& row : parts.rows) qs.push_back(row[c]);
            plot.add_series(parts.columns[c], ts, qs);
        }
        plot.write((dir / "plots" / "positions.svg").string());
        summary << "rows = " << parts.rows.size() << "\n";
    }
}

}  // namespace dplab
