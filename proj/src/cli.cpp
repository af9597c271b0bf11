#include "swarmorbit/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>

#include "swarmorbit/presets.hpp"
#include "swarmorbit/scenario_io.hpp"
#include "swarmorbit/telemetry.hpp"

namespace swarmorbit {

namespace {

constexpr std::string_view kPresetPrefix = "preset:";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace

Verbosity verbosity_from_env() {
    const char* v = std::getenv("SWARMORBIT_VERBOSITY");
    if (!v) return Verbosity::normal;
    const std::string s(v);
    if (s == "quiet" || s == "0") return Verbosity::quiet;
    if (s == "verbose" || s == "2") return Verbosity::verbose;
    return Verbosity::normal;
}

Scenario load_scenario_source(const std::string& source, const std::vector<std::string>& overrides) {
    if (source.rfind(kPresetPrefix, 0) == 0) {
        const std::string name = source.substr(kPresetPrefix.size());
        const auto text = preset_text(name);
        if (!text) throw UsageError("unknown preset '" + name + "' (see `swarmorbit presets list`)");
        return parse_scenario(*text, overrides);
    }
    if (!std::filesystem::is_regular_file(source))
        throw UsageError("scenario file '" + source + "' does not exist");
    return load_scenario_file(source, overrides);
}

ExitCode classify_run(const MonitorSummary& summary, const Scenario& sc) {
    if (summary.collision_count > 0) return ExitCode::collision;
    if (summary.singularity_count > 0) return ExitCode::singularity;
    if (sc.fail_on_saturation && summary.saturation_count > 0) return ExitCode::saturation;
    return ExitCode::ok;
}

void print_summary(std::ostream& out, const MonitorSummary& s, const Scenario& sc,
                   const SimulationLog& log, Verbosity verbosity) {
    if (verbosity == Verbosity::quiet) return;
    const auto real = [](double v) { return format_real(v); };
    out << "scenario            " << (sc.name.empty() ? "(unnamed)" : sc.name) << '\n';
    out << "steps               " << log.steps << (log.halted ? " (halted on collision)" : "") << '\n';
    out << "collision radius r  " << real(sc.safety.r) << '\n';
    out << "min distance        " << real(s.min_pairwise_distance) << '\n';
    out << "collisions          " << s.collision_count;
    if (s.collision_count > 0) out << " (first at t=" << real(s.first_collision_time) << ")";
    out << '\n';
    out << "min Lg_h_i (active) " << real(s.min_active_lg_h_i) << '\n';
    out << "max |omega|         " << real(s.max_abs_omega) << " (omega_max " << real(sc.safety.omega_max)
        << ")\n";
    out << "saturations         " << s.saturation_count << '\n';
    out << "singularities       " << s.singularity_count << '\n';
    out << "inside virtual zone " << s.inside_virtual_zone_count << '\n';
    out << "conflicting demands " << s.conflict_count << '\n';
    out << "overtake episodes   " << s.episodes.size() << " (qualified " << s.lemma_episodes
        << ", Lg_h_i<=0 in qualified " << s.lemma_violations << "; unqualified " << s.unqualified_episodes
        << ", Lg_h_i<=0 in unqualified " << s.unqualified_nonpositive << ")\n";
    double worst = 0.0;
    for (const auto& [id, e] : s.final_abs_error) worst = std::max(worst, e);
    out << "max final |e|/scale " << real(worst) << '\n';
    if (verbosity != Verbosity::verbose) return;
    for (const auto& [id, e] : s.final_abs_error) out << "  robot " << id << " final |e|/scale " << real(e) << '\n';
    for (const OvertakeEpisode& ep : s.episodes) {
        out << "  episode " << ep.i << "->" << ep.j << " [" << real(ep.t_start) << ", " << real(ep.t_end)
            << "] min Lg_h_i " << real(ep.min_lg_h_i) << (ep.preconditions_met ? " qualified" : " unqualified")
            << (ep.opposing ? " opposing" : "") << " stages:";
        for (const StageChange& c : ep.timeline) out << ' ' << to_string(c.stage) << '@' << real(c.t);
        out << '\n';
    }
}

ExitCode run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err, Verbosity verbosity) {
    Scenario sc;
    try {
        sc = load_scenario_source(cfg.scenario_file, cfg.overrides);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return ExitCode::config;
    }
    if (cfg.halt_on_collision) sc.halt_on_collision = true;
    if (cfg.out_dir.empty()) {
        err << "error: --out is required\n";
        return ExitCode::usage;
    }

    SimulationLog log;
    try {
        log = run_scenario(sc, cfg.seed);
    } catch (const ValidationError& e) {
        err << "config error: " << e.what() << '\n';
        return ExitCode::config;
    } catch (const std::exception& e) {
        err << "simulation error: " << e.what() << '\n';
        return ExitCode::runtime;
    }
    if (log.records.empty()) {
        err << "simulation error: no records produced\n";
        return ExitCode::runtime;
    }

    try {
        emit_csv(log.records, cfg.out_dir, cfg.force);
    } catch (const std::exception& e) {
        err << "output error: " << e.what() << '\n';
        return ExitCode::output;
    }

    const MonitorSummary summary = monitor_report(log, sc);
    print_summary(out, summary, sc, log, verbosity);
    const ExitCode code = classify_run(summary, sc);
    if (code != ExitCode::ok)
        err << "run failed: exit status " << static_cast<int>(code) << '\n';
    return code;
}

ExitCode validate_command(const std::string& source, const std::vector<std::string>& overrides,
                          std::ostream& out, std::ostream& err) {
    try {
        const Scenario sc = load_scenario_source(source, overrides);
        out << "ok: " << (sc.name.empty() ? source : sc.name) << " (" << sc.robot_count() << " robots, "
            << format_real(sc.duration) << " s at dt " << format_real(sc.dt) << ")\n";
        return ExitCode::ok;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const std::ios_base::failure& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::usage;
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return ExitCode::config;
    }
}

int cli_main(int argc, char** argv) {
    CLI::App app{"Constant-speed unicycle swarm orbiting a closed path with collision-cone safety filtering"};
    app.require_subcommand(1);

    RunConfig run_cfg;
    auto* run = app.add_subcommand("run", "Run a scenario and write CSV telemetry");
    run->add_option("--config", run_cfg.scenario_file, "Scenario file or preset:<name>")->required();
    run->add_option("--out", run_cfg.out_dir, "Output directory")->required();
    run->add_option("--seed", run_cfg.seed, "Random seed")->capture_default_str();
    run->add_option("--set", run_cfg.overrides, "Override a scenario value, key.path=value");
    run->add_flag("--halt-on-collision", run_cfg.halt_on_collision, "Stop at the first collision");
    run->add_flag("--force", run_cfg.force, "Overwrite existing output files");

    std::string validate_source;
    std::vector<std::string> validate_overrides;
    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario");
    validate->add_option("--config", validate_source, "Scenario file or preset:<name>")->required();
    validate->add_option("--set", validate_overrides, "Override a scenario value, key.path=value");

    auto* presets = app.add_subcommand("presets", "Shipped scenario presets");
    presets->require_subcommand(1);
    auto* list = presets->add_subcommand("list", "List preset names");
    std::string show_name;
    auto* show = presets->add_subcommand("show", "Print a preset");
    show->add_option("name", show_name, "Preset name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ExitCode::usage);
    }

    if (run->parsed())
        return static_cast<int>(run_command(run_cfg, std::cout, std::cerr, verbosity_from_env()));
    if (validate->parsed())
        return static_cast<int>(validate_command(validate_source, validate_overrides, std::cout, std::cerr));
    if (list->parsed()) {
        for (const std::string& name : preset_names()) std::cout << name << '\n';
        return 0;
    }
    if (show->parsed()) {
        const auto text = preset_text(show_name);
        if (!text) {
            std::cerr << "error: unknown preset '" << show_name << "'\n";
            return static_cast<int>(ExitCode::usage);
        }
        std::cout << *text;
        return 0;
    }
    return static_cast<int>(ExitCode::usage);
}

}  // namespace swarmorbit
