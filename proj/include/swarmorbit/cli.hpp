#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "swarmorbit/scenario.hpp"
#include "swarmorbit/sim.hpp"

namespace swarmorbit {

// Process exit statuses of the command-line tool. When several failure
// classes occur in one run the lowest-numbered of 4..6 wins.
enum class ExitCode : int {
    ok = 0,
    usage = 1,          // bad arguments, missing scenario file, unknown preset
    config = 2,         // scenario parse or validation error
    output = 3,         // cannot write outputs / refusing to overwrite
    collision = 4,      // some pair came within the collision radius
    singularity = 5,    // closed-form correction hit |Lg_h_i| ~ 0
    saturation = 6,     // input clamped to omega_max (run.fail_on_saturation)
    runtime = 7,        // other simulation failure (degenerate field, ...)
};

struct RunConfig {
    std::string scenario_file;  // path, or "preset:<name>"
    std::string out_dir;
    std::uint64_t seed = 1;
    std::vector<std::string> overrides;
    bool halt_on_collision = false;
    bool force = false;
};

enum class Verbosity { quiet, normal, verbose };

// Reads SWARMORBIT_VERBOSITY (quiet | normal | verbose); defaults to normal.
Verbosity verbosity_from_env();

// Loads a scenario from a file path or "preset:<name>".
Scenario load_scenario_source(const std::string& source, const std::vector<std::string>& overrides);

ExitCode classify_run(const MonitorSummary& summary, const Scenario& sc);

void print_summary(std::ostream& out, const MonitorSummary& summary, const Scenario& sc,
                   const SimulationLog& log, Verbosity verbosity);

ExitCode run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err,
                     Verbosity verbosity = Verbosity::normal);
ExitCode validate_command(const std::string& source, const std::vector<std::string>& overrides,
                          std::ostream& out, std::ostream& err);

// Entry point of the `swarmorbit` executable.
int cli_main(int argc, char** argv);

}  // namespace swarmorbit
