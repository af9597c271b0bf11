#include "swarmorbit/scenario_io.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

namespace swarmorbit {

namespace {

[[noreturn]] void fail(const YAML::Node& node, const std::string& msg) {
    const YAML::Mark m = node.Mark();
    const int line = m.line >= 0 ? m.line + 1 : 0;
    const int col = m.column >= 0 ? m.column + 1 : 0;
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg,
                     line, col);
}

// Rejects keys outside `allowed`, reporting the offending key's position.
void check_keys(const YAML::Node& map, const std::string& section, const std::set<std::string>& allowed) {
    if (!map.IsMap()) fail(map, "'" + section + "' must be a mapping");
    for (const auto& kv : map) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key))
            fail(kv.first, "unknown key '" + (section.empty() ? key : section + "." + key) + "'");
    }
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
    if (!node.IsScalar()) fail(node, "'" + key + "' must be a scalar");
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        fail(node, "'" + key + "' has an invalid value '" + node.Scalar() + "'");
    }
}

template <typename T>
T get(const YAML::Node& map, const std::string& section, const std::string& key, T fallback) {
    const YAML::Node n = map[key];
    if (!n) return fallback;
    return scalar<T>(n, section + "." + key);
}

template <typename T>
T require(const YAML::Node& map, const std::string& section, const std::string& key) {
    const YAML::Node n = map[key];
    if (!n) fail(map, "missing required key '" + section + "." + key + "'");
    return scalar<T>(n, section + "." + key);
}

Vec2 vec2(const YAML::Node& node, const std::string& key) {
    if (!node.IsSequence() || node.size() != 2) fail(node, "'" + key + "' must be a pair [x, y]");
    return {scalar<double>(node[0], key), scalar<double>(node[1], key)};
}

YAML::Node section(const YAML::Node& root, const std::string& key, bool required) {
    const YAML::Node n = root[key];
    if (!n) {
        if (required) fail(root, "missing required section '" + key + "'");
        return YAML::Node(YAML::NodeType::Map);
    }
    return n;
}

Orientation parse_direction(const YAML::Node& node, const std::string& key) {
    const auto s = scalar<std::string>(node, key);
    if (s == "cw" || s == "clockwise") return Orientation::clockwise;
    if (s == "ccw" || s == "counter_clockwise") return Orientation::counter_clockwise;
    fail(node, "'" + key + "' must be cw or ccw");
}

ImplicitPath parse_path(const YAML::Node& n) {
    check_keys(n, "path", {"kind", "center", "radius", "a", "b"});
    const YAML::Node kind = n["kind"];
    if (!kind) fail(n, "missing required key 'path.kind'");
    const auto k = scalar<std::string>(kind, "path.kind");
    const Vec2 center = n["center"] ? vec2(n["center"], "path.center") : Vec2{};
    if (k == "circle") {
        if (n["a"] || n["b"]) fail(n, "circle paths take 'radius', not 'a'/'b'");
        return ImplicitPath::circle(center, require<double>(n, "path", "radius"));
    }
    if (k == "ellipse") {
        if (n["radius"]) fail(n["radius"], "ellipse paths take 'a' and 'b', not 'radius'");
        return ImplicitPath::ellipse(center, require<double>(n, "path", "a"), require<double>(n, "path", "b"));
    }
    fail(kind, "'path.kind' must be circle or ellipse");
}

SafetyConfig parse_safety(const YAML::Node& n) {
    check_keys(n, "safety", {"r", "d", "gamma", "kappa", "omega_max", "clearance", "sensing_range",
                               "opposing_as_static", "neighbor_input"});
    SafetyConfig cfg;
    cfg.r = require<double>(n, "safety", "r");
    cfg.d_exp = get<double>(n, "safety", "d", 0.5);
    cfg.kappa.gamma = get<double>(n, "safety", "gamma", 1.0);
    const auto form = get<std::string>(n, "safety", "kappa", "cubic");
    if (form == "cubic") {
        cfg.kappa.form = ClassK::Form::cubic;
    } else if (form == "linear") {
        cfg.kappa.form = ClassK::Form::linear;
    } else {
        fail(n["kappa"], "'safety.kappa' must be cubic or linear");
    }
    cfg.omega_max = require<double>(n, "safety", "omega_max");
    cfg.clearance = get<double>(n, "safety", "clearance", 0.0);
    cfg.sensing_range = get<double>(n, "safety", "sensing_range", 0.0);
    cfg.opposing_as_static = get<bool>(n, "safety", "opposing_as_static", false);
    const auto input = get<std::string>(n, "safety", "neighbor_input", "applied");
    if (input == "applied") {
        cfg.neighbor_input = SafetyConfig::NeighborInput::applied;
    } else if (input == "reference") {
        cfg.neighbor_input = SafetyConfig::NeighborInput::reference;
    } else {
        fail(n["neighbor_input"], "'safety.neighbor_input' must be applied or reference");
    }
    return cfg;
}

SpawnSpec parse_spawn(const YAML::Node& n, const std::string& key) {
    SpawnSpec spawn;
    if (n.IsScalar()) {
        const auto kind = n.as<std::string>();
        if (kind == "launch") spawn.kind = SpawnSpec::Kind::launch;
        else if (kind == "ring") spawn.kind = SpawnSpec::Kind::ring;
        else fail(n, "'" + key + "' must be launch, ring or a mapping");
        return spawn;
    }
    check_keys(n, key, {"kind", "level", "phase", "arc", "position", "heading"});
    const auto kind = require<std::string>(n, key, "kind");
    if (kind == "launch") spawn.kind = SpawnSpec::Kind::launch;
    else if (kind == "ring") spawn.kind = SpawnSpec::Kind::ring;
    else if (kind == "point") spawn.kind = SpawnSpec::Kind::point;
    else fail(n["kind"], "'" + key + ".kind' must be launch, ring or point");
    spawn.level = get<double>(n, key, "level", 1.0);
    spawn.phase = get<double>(n, key, "phase", 0.0);
    spawn.arc = get<double>(n, key, "arc", 1.0);
    if (spawn.kind == SpawnSpec::Kind::point) {
        if (!n["position"]) fail(n, "missing required key '" + key + ".position'");
        spawn.position = vec2(n["position"], key + ".position");
    }
    if (n["heading"]) spawn.heading = scalar<double>(n["heading"], key + ".heading");
    return spawn;
}

RobotGroup parse_group(const YAML::Node& n, const std::string& key) {
    check_keys(n, key, {"count", "speed", "swarm", "direction", "ignore_swarms", "spawn"});
    RobotGroup g;
    g.count = get<int>(n, key, "count", 1);
    const YAML::Node speed = n["speed"];
    if (!speed) fail(n, "missing required key '" + key + ".speed'");
    if (speed.IsSequence()) {
        if (speed.size() != 2) fail(speed, "'" + key + ".speed' must be a number or [lo, hi]");
        g.speed = {scalar<double>(speed[0], key + ".speed"), scalar<double>(speed[1], key + ".speed")};
    } else {
        const double s = scalar<double>(speed, key + ".speed");
        g.speed = {s, s};
    }
    g.swarm = get<int>(n, key, "swarm", 0);
    if (n["direction"]) g.direction = parse_direction(n["direction"], key + ".direction");
    if (const YAML::Node ign = n["ignore_swarms"]) {
        if (!ign.IsSequence()) fail(ign, "'" + key + ".ignore_swarms' must be a list");
        for (const auto& v : ign) g.ignore_swarms.push_back(scalar<int>(v, key + ".ignore_swarms"));
    }
    if (const YAML::Node sp = n["spawn"]) g.spawn = parse_spawn(sp, key + ".spawn");
    return g;
}

Scenario parse_node(const YAML::Node& root) {
    if (!root.IsMap()) fail(root, "scenario document must be a mapping");
    check_keys(root, "", {"name", "path", "gains", "safety", "monitor", "robots", "launch", "run"});

    Scenario sc;
    sc.name = root["name"] ? scalar<std::string>(root["name"], "name") : std::string{};
    sc.path = parse_path(section(root, "path", true));

    const YAML::Node gains = section(root, "gains", false);
    check_keys(gains, "gains", {"k_e", "k_d"});
    sc.gains.k_e = get<double>(gains, "gains", "k_e", 1.0);
    sc.gains.k_d = get<double>(gains, "gains", "k_d", 1.0);

    sc.safety = parse_safety(section(root, "safety", true));

    const YAML::Node mon = section(root, "monitor", false);
    check_keys(mon, "monitor", {"eps_pre", "delta_pre"});
    sc.monitor.eps_pre = get<double>(mon, "monitor", "eps_pre", 0.2);
    sc.monitor.delta_pre = get<double>(mon, "monitor", "delta_pre", 0.5);

    if (const YAML::Node robots = root["robots"]) {
        if (!robots.IsSequence()) fail(robots, "'robots' must be a list");
        for (std::size_t k = 0; k < robots.size(); ++k)
            sc.robots.push_back(parse_group(robots[k], "robots[" + std::to_string(k) + "]"));
    }

    if (const YAML::Node launch = root["launch"]) {
        check_keys(launch, "launch", {"origin", "carrier_speed", "spacing_multiple"});
        LaunchSpec spec;
        if (!launch["origin"]) fail(launch, "missing required key 'launch.origin'");
        spec.origin = vec2(launch["origin"], "launch.origin");
        spec.carrier_speed = get<double>(launch, "launch", "carrier_speed", 0.0);
        spec.spacing_multiple = get<double>(launch, "launch", "spacing_multiple", 2.5);
        sc.launch = spec;
    }

    const YAML::Node run = section(root, "run", false);
    check_keys(run, "run", {"duration", "dt", "record_every", "halt_on_collision", "fail_on_saturation"});
    sc.duration = get<double>(run, "run", "duration", 10.0);
    sc.dt = get<double>(run, "run", "dt", 1e-3);
    sc.record_every = get<int>(run, "run", "record_every", 1);
    sc.halt_on_collision = get<bool>(run, "run", "halt_on_collision", false);
    sc.fail_on_saturation = get<bool>(run, "run", "fail_on_saturation", true);

    sc.validate();
    return sc;
}

bool is_index(const std::string& s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

// Returns a copy of `node` with the value at `keys[pos..]` replaced.
YAML::Node with_override(const YAML::Node& node, const std::vector<std::string>& keys, std::size_t pos,
                         const YAML::Node& value, const std::string& full) {
    if (pos == keys.size()) return YAML::Clone(value);
    YAML::Node out = node ? YAML::Clone(node) : YAML::Node(YAML::NodeType::Map);
    const std::string& key = keys[pos];
    if (out.IsSequence()) {
        if (!is_index(key)) throw ValidationError("override '" + full + "': '" + key + "' is not a list index");
        const std::size_t idx = std::stoul(key);
        if (idx >= out.size()) throw ValidationError("override '" + full + "': index " + key + " out of range");
        out[idx] = with_override(out[idx], keys, pos + 1, value, full);
        return out;
    }
    if (!out.IsMap() && !out.IsNull())
        throw ValidationError("override '" + full + "': '" + keys[pos - 1] + "' is not a section");
    out[key] = with_override(out[key], keys, pos + 1, value, full);
    return out;
}

YAML::Node load_with_overrides(std::string_view text, const std::vector<std::string>& overrides) {
    YAML::Node root;
    try {
        root = YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ParseError("line " + std::to_string(e.mark.line + 1) + ", column " +
                             std::to_string(e.mark.column + 1) + ": " + e.msg,
                         e.mark.line + 1, e.mark.column + 1);
    }
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ValidationError("override '" + ov + "' must have the form key=value");
        std::vector<std::string> keys;
        std::stringstream ks(ov.substr(0, eq));
        for (std::string part; std::getline(ks, part, '.');) keys.push_back(part);
        YAML::Node value;
        try {
            value = YAML::Load(ov.substr(eq + 1));
        } catch (const YAML::Exception& e) {
            throw ValidationError("override '" + ov + "': " + e.msg);
        }
        root = with_override(root, keys, 0, value, ov);
    }
    return root;
}

const char* direction_name(Orientation o) { return o == Orientation::clockwise ? "cw" : "ccw"; }

void emit_vec2(YAML::Emitter& out, const Vec2& v) {
    out << YAML::Flow << YAML::BeginSeq << v.x << v.y << YAML::EndSeq;
}

}  // namespace

Scenario parse_scenario(std::string_view text) { return parse_scenario(text, {}); }

Scenario parse_scenario(std::string_view text, const std::vector<std::string>& overrides) {
    const YAML::Node root = load_with_overrides(text, overrides);
    try {
        return parse_node(root);
    } catch (const YAML::Exception& e) {
        throw ParseError("line " + std::to_string(e.mark.line + 1) + ", column " +
                             std::to_string(e.mark.column + 1) + ": " + e.msg,
                         e.mark.line + 1, e.mark.column + 1);
    }
}

std::string render_scenario(const Scenario& sc) {
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << sc.name;

    out << YAML::Key << "path" << YAML::Value << YAML::BeginMap;
    if (sc.path.kind == ImplicitPath::Kind::circle) {
        out << YAML::Key << "kind" << YAML::Value << "circle";
        out << YAML::Key << "center" << YAML::Value;
        emit_vec2(out, sc.path.center);
        out << YAML::Key << "radius" << YAML::Value << sc.path.a;
    } else {
        out << YAML::Key << "kind" << YAML::Value << "ellipse";
        out << YAML::Key << "center" << YAML::Value;
        emit_vec2(out, sc.path.center);
        out << YAML::Key << "a" << YAML::Value << sc.path.a;
        out << YAML::Key << "b" << YAML::Value << sc.path.b;
    }
    out << YAML::EndMap;

    out << YAML::Key << "gains" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "k_e" << YAML::Value << sc.gains.k_e;
    out << YAML::Key << "k_d" << YAML::Value << sc.gains.k_d;
    out << YAML::EndMap;

    const SafetyConfig& s = sc.safety;
    out << YAML::Key << "safety" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "r" << YAML::Value << s.r;
    out << YAML::Key << "d" << YAML::Value << s.d_exp;
    out << YAML::Key << "gamma" << YAML::Value << s.kappa.gamma;
    out << YAML::Key << "kappa" << YAML::Value
        << (s.kappa.form == ClassK::Form::cubic ? "cubic" : "linear");
    out << YAML::Key << "omega_max" << YAML::Value << s.omega_max;
    out << YAML::Key << "clearance" << YAML::Value << s.clearance;
    out << YAML::Key << "sensing_range" << YAML::Value << s.sensing_range;
    out << YAML::Key << "opposing_as_static" << YAML::Value << s.opposing_as_static;
    out << YAML::Key << "neighbor_input" << YAML::Value
        << (s.neighbor_input == SafetyConfig::NeighborInput::applied ? "applied" : "reference");
    out << YAML::EndMap;

    out << YAML::Key << "monitor" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "eps_pre" << YAML::Value << sc.monitor.eps_pre;
    out << YAML::Key << "delta_pre" << YAML::Value << sc.monitor.delta_pre;
    out << YAML::EndMap;

    out << YAML::Key << "robots" << YAML::Value << YAML::BeginSeq;
    for (const RobotGroup& g : sc.robots) {
        out << YAML::BeginMap;
        out << YAML::Key << "count" << YAML::Value << g.count;
        out << YAML::Key << "speed" << YAML::Value << YAML::Flow << YAML::BeginSeq << g.speed.lo
            << g.speed.hi << YAML::EndSeq;
        out << YAML::Key << "swarm" << YAML::Value << g.swarm;
        out << YAML::Key << "direction" << YAML::Value << direction_name(g.direction);
        out << YAML::Key << "ignore_swarms" << YAML::Value << YAML::Flow << g.ignore_swarms;
        out << YAML::Key << "spawn" << YAML::Value << YAML::BeginMap;
        switch (g.spawn.kind) {
            case SpawnSpec::Kind::launch: out << YAML::Key << "kind" << YAML::Value << "launch"; break;
            case SpawnSpec::Kind::ring: out << YAML::Key << "kind" << YAML::Value << "ring"; break;
            case SpawnSpec::Kind::point: out << YAML::Key << "kind" << YAML::Value << "point"; break;
        }
        out << YAML::Key << "level" << YAML::Value << g.spawn.level;
        out << YAML::Key << "phase" << YAML::Value << g.spawn.phase;
        out << YAML::Key << "arc" << YAML::Value << g.spawn.arc;
        if (g.spawn.kind == SpawnSpec::Kind::point) {
            out << YAML::Key << "position" << YAML::Value;
            emit_vec2(out, g.spawn.position);
        }
        if (g.spawn.heading) out << YAML::Key << "heading" << YAML::Value << *g.spawn.heading;
        out << YAML::EndMap;
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;

    if (sc.launch) {
        out << YAML::Key << "launch" << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "origin" << YAML::Value;
        emit_vec2(out, sc.launch->origin);
        out << YAML::Key << "carrier_speed" << YAML::Value << sc.launch->carrier_speed;
        out << YAML::Key << "spacing_multiple" << YAML::Value << sc.launch->spacing_multiple;
        out << YAML::EndMap;
    }

    out << YAML::Key << "run" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "duration" << YAML::Value << sc.duration;
    out << YAML::Key << "dt" << YAML::Value << sc.dt;
    out << YAML::Key << "record_every" << YAML::Value << sc.record_every;
    out << YAML::Key << "halt_on_collision" << YAML::Value << sc.halt_on_collision;
    out << YAML::Key << "fail_on_saturation" << YAML::Value << sc.fail_on_saturation;
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

Scenario load_scenario_file(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), overrides);
}

}  // namespace swarmorbit
