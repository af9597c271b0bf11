#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include <unistd.h>

#include "swarmorbit/cli.hpp"
#include "swarmorbit/presets.hpp"
#include "swarmorbit/scenario_io.hpp"
#include "swarmorbit/telemetry.hpp"

using namespace swarmorbit;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"(path: {kind: circle, radius: 10}
safety: {r: 0.5, omega_max: 2}
robots:
  - count: 1
    speed: 2
)";

const char* kTwoPoint = R"(name: two_point
path: {kind: circle, center: [0, 0], radius: 10}
gains: {k_e: 1, k_d: 2}
safety: {r: 0.5, omega_max: 3, kappa: linear, gamma: 1, clearance: 0.2}
robots:
  - count: 1
    speed: 2
    spawn: {kind: point, position: [10, 0]}
  - count: 1
    speed: 3
    spawn: {kind: point, position: [POS]}
run: {duration: 0.5, dt: 0.001, record_every: 10}
)";

std::string two_point(const std::string& pos) {
    std::string text = kTwoPoint;
    text.replace(text.find("POS"), 3, pos);
    return text;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("swarmorbit_test_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path write_file(const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
    return p;
}

ExitCode run(const std::string& source, const fs::path& out, std::vector<std::string> overrides = {}) {
    RunConfig cfg;
    cfg.scenario_file = source;
    cfg.out_dir = out.string();
    cfg.overrides = std::move(overrides);
    std::ostringstream o, e;
    return run_command(cfg, o, e, Verbosity::quiet);
}

}  // namespace

TEST_CASE("minimal scenario gets documented defaults") {
    const Scenario sc = parse_scenario(kMinimal);
    CHECK(sc.path.kind == ImplicitPath::Kind::circle);
    CHECK(sc.path.a == 10.0);
    CHECK(sc.safety.d_exp == 0.5);
    CHECK(sc.safety.kappa.form == ClassK::Form::cubic);
    CHECK(sc.safety.clearance == 0.0);
    CHECK(sc.safety.neighbor_input == SafetyConfig::NeighborInput::applied);
    CHECK(sc.gains.k_e == 1.0);
    CHECK(sc.dt == 1e-3);
    CHECK(sc.robot_count() == 1);
    CHECK(sc.robots[0].spawn.kind == SpawnSpec::Kind::ring);
    CHECK(sc.fail_on_saturation);
}

TEST_CASE("out-of-range exponent is rejected with its range") {
    try {
        parse_scenario(kMinimal, {"safety.d=1.5"});
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("[0,1)") != std::string::npos);
    }
}

TEST_CASE("unknown keys and bad types carry a location") {
    try {
        parse_scenario("path: {kind: circle, radius: 10}\nsafety: {r: 0.5, omega_max: 2}\nrobots: []\nrun:\n  durration: 3\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 5);
        CHECK(e.column() >= 1);
        CHECK(std::string(e.what()).find("durration") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_scenario("path: {kind: circle, radius: ten}\nsafety: {r: 1, omega_max: 1}\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario("path: [unclosed\n"), ParseError);
    CHECK_THROWS_AS(parse_scenario(kMinimal, {"safety.nope=1"}), ParseError);
}

TEST_CASE("overrides") {
    const Scenario sc = parse_scenario(kMinimal, {"robots.0.count=4", "safety.kappa=linear", "robots.0.speed=[1, 2]"});
    CHECK(sc.robots[0].count == 4);
    CHECK(sc.safety.kappa.form == ClassK::Form::linear);
    CHECK(sc.robots[0].speed.lo == 1.0);
    CHECK(sc.robots[0].speed.hi == 2.0);
    CHECK_THROWS(parse_scenario(kMinimal, {"no_equals_sign"}));
}

TEST_CASE("every preset parses and survives a render round-trip") {
    REQUIRE(preset_names().size() >= 3);
    for (const std::string& name : preset_names()) {
        CAPTURE(name);
        const auto text = preset_text(name);
        REQUIRE(text);
        const Scenario sc = parse_scenario(*text);
        CHECK(sc.name == name);
        CHECK(parse_scenario(render_scenario(sc)) == sc);
    }
    CHECK_FALSE(preset_text("no_such_preset"));
}

TEST_CASE("mothership preset matches its description") {
    const Scenario sc = parse_scenario(*preset_text("fig4_mothership"));
    CHECK(sc.path.kind == ImplicitPath::Kind::ellipse);
    CHECK(sc.robot_count() == 50);
    REQUIRE(sc.launch);
    CHECK(sc.launch->spacing_multiple == 2.5);
    CHECK(sc.robots[0].spawn.kind == SpawnSpec::Kind::launch);
    CHECK(sc.robots[0].speed.lo < 5.0);
    CHECK(sc.robots[0].speed.hi > 5.0);
    CHECK(sc.duration == 120.0);
    CHECK(sc.dt == 1e-3);
}

TEST_CASE("format_real round-trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.123456789}) CHECK(std::stod(format_real(v)) == v);
}

TEST_CASE("CSV output") {
    TempDir tmp("csv");
    Scenario sc = parse_scenario(kMinimal, {"run.duration=0.001", "run.dt=0.001"});
    const SimulationLog log = run_scenario(sc, 1);
    const auto files = emit_csv(log.records, tmp.path);
    CHECK(files.size() == 3);

    std::istringstream robots(slurp(tmp.path / "robots.csv"));
    std::string header, row, extra;
    std::getline(robots, header);
    CHECK(header == kRobotsCsvHeader);
    REQUIRE(std::getline(robots, row));
    CHECK(std::count(row.begin(), row.end(), ',') == 6);
    CHECK_FALSE(std::getline(robots, extra));

    CHECK(slurp(tmp.path / "pairs.csv").rfind(std::string(kPairsCsvHeader) + "\n", 0) == 0);
    CHECK(slurp(tmp.path / "summary.csv").rfind(std::string(kSummaryCsvHeader) + "\n", 0) == 0);

    CHECK_THROWS(emit_csv(log.records, tmp.path));
    CHECK_NOTHROW(emit_csv(log.records, tmp.path, true));
    CHECK_THROWS_AS(emit_csv({}, tmp.path / "empty"), std::invalid_argument);
}

TEST_CASE("same seed gives byte-identical CSV files") {
    TempDir tmp("det");
    const std::string src = "preset:fig3_pair";
    const std::vector<std::string> shorter{"run.duration=2"};
    REQUIRE(run(src, tmp.path / "a", shorter) == ExitCode::ok);
    REQUIRE(run(src, tmp.path / "b", shorter) == ExitCode::ok);
    for (const char* f : {"robots.csv", "pairs.csv", "summary.csv"})
        CHECK(slurp(tmp.path / "a" / f) == slurp(tmp.path / "b" / f));
}

TEST_CASE("exit status per failure class") {
    TempDir tmp("exit");
    const fs::path good = write_file(tmp.path / "good.yaml", two_point("-10, 0"));
    const fs::path clash = write_file(tmp.path / "clash.yaml", two_point("10, 0"));
    const fs::path centre = write_file(tmp.path / "centre.yaml",
                                       "path: {kind: circle, radius: 10}\nsafety: {r: 0.5, omega_max: 2}\n"
                                       "robots:\n  - speed: 1\n    spawn: {kind: point, position: [0, 0], heading: 0}\n");

    CHECK(run(good.string(), tmp.path / "ok") == ExitCode::ok);
    CHECK(run((tmp.path / "missing.yaml").string(), tmp.path / "u") == ExitCode::usage);
    CHECK(run("preset:nope", tmp.path / "u2") == ExitCode::usage);
    CHECK(run(good.string(), tmp.path / "c", {"safety.d=1.5"}) == ExitCode::config);
    CHECK(run(good.string(), tmp.path / "ok") == ExitCode::output);  // refuses to overwrite
    CHECK(run(clash.string(), tmp.path / "col") == ExitCode::collision);
    CHECK(run(good.string(), tmp.path / "sat", {"safety.omega_max=0.01"}) == ExitCode::saturation);
    CHECK(run(good.string(), tmp.path / "sat2", {"safety.omega_max=0.01", "run.fail_on_saturation=false"}) ==
          ExitCode::ok);
    CHECK(run(centre.string(), tmp.path / "rt") == ExitCode::runtime);
}

TEST_CASE("failure class precedence") {
    const Scenario sc = parse_scenario(kMinimal);
    MonitorSummary m;
    CHECK(classify_run(m, sc) == ExitCode::ok);
    m.saturation_count = 2;
    CHECK(classify_run(m, sc) == ExitCode::saturation);
    m.singularity_count = 1;
    CHECK(classify_run(m, sc) == ExitCode::singularity);
    m.collision_count = 1;
    CHECK(classify_run(m, sc) == ExitCode::collision);
}

TEST_CASE("validate command") {
    std::ostringstream out, err;
    CHECK(validate_command("preset:fig3_pair", {}, out, err) == ExitCode::ok);
    CHECK(validate_command("preset:fig3_pair", {"safety.r=-1"}, out, err) == ExitCode::config);
    CHECK(validate_command("/nonexistent/file.yaml", {}, out, err) == ExitCode::usage);
}
