// Command-line front end: scenario execution, certificate-only verification,
// and report emission. Exit codes: 0 pass, 1 verdict fail, 2 usage/config
// error, 3 numeric failure.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

#include "dplab/dplab.hpp"

namespace {

struct CommonFlags {
    int grid_n = 0;
    double grid_l = 0.0;
    long seed = -1;
    double t_end = 0.0;
    bool strict = true;
    std::string out;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--grid-n", flags.grid_n, "Override grid point count");
    cmd->add_option("--grid-l", flags.grid_l, "Override grid half-length");
    cmd->add_option("--seed", flags.seed, "Override random seed");
    cmd->add_option("--t-end", flags.t_end, "Override final time");
    cmd->add_flag("--strict,!--no-strict", flags.strict,
                  "Reject unknown config keys (default on)");
    cmd->add_option("--out", flags.out, "Override output directory");
}

dplab::ScenarioConfig load_with_overrides(const std::string& path, const CommonFlags& flags) {
    dplab::Config cfg = dplab::Config::parse_file(path);
    if (flags.grid_n > 0) cfg.set("grid.n", std::to_string(flags.grid_n));
    if (flags.grid_l > 0.0) cfg.set("grid.l", dplab::format_double(flags.grid_l));
    if (flags.seed >= 0) cfg.set("seed", std::to_string(flags.seed));
    if (flags.t_end > 0.0) cfg.set("solver.t_end", dplab::format_double(flags.t_end));
    if (!flags.out.empty()) cfg.set("out", flags.out);
    return dplab::load_scenario(cfg, flags.strict);
}

int report_outcome(const dplab::RunArtifact& art) {
    std::printf("scenario: %s\n", dplab::to_string(art.kind));
    std::printf("artifacts: %s\n", art.dir.c_str());
    std::printf("verdict: %s\n", art.pass ? "pass" : "fail");
    for (const auto& [key, value] : art.verdict) {
        if (key == "scenario" || key == "exit_status") continue;
        std::printf("  %s = %s\n", key.c_str(), value.c_str());
    }
    return art.exit_status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Degasperis-Procesi peakon laboratory"};
    app.require_subcommand(1);

    std::string config_path, artifact_dir;
    CommonFlags flags;

    CLI::App* simulate = app.add_subcommand("simulate", "Run the configured scenario");
    simulate->add_option("config", config_path, "Scenario config file")->required();
    add_common_flags(simulate, flags);

    CLI::App* verify = app.add_subcommand("verify", "Certificates only, no evolution");
    verify->add_option("config", config_path, "Scenario config file")->required();
    add_common_flags(verify, flags);

    CLI::App* collide = app.add_subcommand("collide", "Run the multipeakon collision scenario");
    collide->add_option("config", config_path, "Scenario config file")->required();
    add_common_flags(collide, flags);

    CLI::App* blowup = app.add_subcommand("blowup", "Run the blow-up scenario");
    blowup->add_option("config", config_path, "Scenario config file")->required();
    add_common_flags(blowup, flags);

    CLI::App* report = app.add_subcommand("report", "Emit plots and summary for an artifact dir");
    report->add_option("artifact_dir", artifact_dir, "Directory written by a previous run")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (report->parsed()) {
            dplab::emit_report(artifact_dir);
            std::printf("report written under %s\n", artifact_dir.c_str());
            return 0;
        }
        dplab::ScenarioConfig sc = load_with_overrides(config_path, flags);
        if (collide->parsed() && sc.kind != dplab::ScenarioKind::collision)
            throw dplab::ConfigError("collide: config does not name a collision scenario");
        if (blowup->parsed() && sc.kind != dplab::ScenarioKind::blowup)
            throw dplab::ConfigError("blowup: config does not name a blowup scenario");
        const dplab::RunArtifact art =
            verify->parsed() ? dplab::run_verify_only(sc) : dplab::run_scenario(sc);
        return report_outcome(art);
    } catch (const dplab::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numeric failure: %s\n", e.what());
        return 3;
    }
}
