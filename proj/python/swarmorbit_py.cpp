#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include <sstream>

#include "swarmorbit/cli.hpp"
#include "swarmorbit/presets.hpp"
#include "swarmorbit/scenario_io.hpp"
#include "swarmorbit/telemetry.hpp"

namespace py = pybind11;
using namespace swarmorbit;

namespace {

Vec2 vec(const std::pair<double, double>& p) { return {p.first, p.second}; }
std::pair<double, double> tup(const Vec2& v) { return {v.x, v.y}; }

// Robot samples of every record as an (n, 7) array: t, id, x, y, theta, omega, e.
py::array_t<double> robot_table(const SimulationLog& log) {
    std::size_t n = 0;
    for (const auto& rec : log.records) n += rec.robots.size();
    py::array_t<double> out({n, std::size_t{7}});
    auto a = out.mutable_unchecked<2>();
    std::size_t row = 0;
    for (const auto& rec : log.records) {
        for (const auto& s : rec.robots) {
            a(row, 0) = rec.t;
            a(row, 1) = s.id;
            a(row, 2) = s.p.x;
            a(row, 3) = s.p.y;
            a(row, 4) = s.theta;
            a(row, 5) = s.omega;
            a(row, 6) = s.e;
            ++row;
        }
    }
    return out;
}

py::dict summary_dict(const MonitorSummary& m) {
    py::dict d;
    d["min_pairwise_distance"] = m.min_pairwise_distance;
    d["first_collision_time"] = m.first_collision_time;
    d["min_active_lg_h_i"] = m.min_active_lg_h_i;
    d["max_abs_omega"] = m.max_abs_omega;
    d["collision_count"] = m.collision_count;
    d["saturation_count"] = m.saturation_count;
    d["singularity_count"] = m.singularity_count;
    d["inside_virtual_zone_count"] = m.inside_virtual_zone_count;
    d["conflict_count"] = m.conflict_count;
    d["forbidden_transitions"] = m.forbidden_transitions;
    d["lemma_episodes"] = m.lemma_episodes;
    d["lemma_violations"] = m.lemma_violations;
    d["unqualified_episodes"] = m.unqualified_episodes;
    d["final_abs_error"] = m.final_abs_error;
    py::list episodes;
    for (const auto& ep : m.episodes) {
        py::dict e;
        e["i"] = ep.i;
        e["j"] = ep.j;
        e["t_start"] = ep.t_start;
        e["t_end"] = ep.t_end;
        e["min_lg_h_i"] = ep.min_lg_h_i;
        e["preconditions_met"] = ep.preconditions_met;
        py::list stages;
        for (const auto& c : ep.timeline) stages.append(py::make_tuple(c.t, to_string(c.stage)));
        e["stages"] = stages;
        episodes.append(e);
    }
    d["episodes"] = episodes;
    return d;
}

}  // namespace

PYBIND11_MODULE(_swarmorbit, m) {
    m.doc() = "Constant-speed unicycle swarm on a closed path with collision-cone safety filtering";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<SingularityError>(m, "SingularityError", PyExc_ArithmeticError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

    py::class_<ImplicitPath>(m, "Path")
        .def_static("circle", [](std::pair<double, double> c, double r) { return ImplicitPath::circle(vec(c), r); },
                    py::arg("center"), py::arg("radius"))
        .def_static("ellipse",
                    [](std::pair<double, double> c, double a, double b) { return ImplicitPath::ellipse(vec(c), a, b); },
                    py::arg("center"), py::arg("a"), py::arg("b"))
        .def("value", [](const ImplicitPath& p, std::pair<double, double> q) { return p.value(vec(q)); })
        .def("gradient", [](const ImplicitPath& p, std::pair<double, double> q) { return tup(p.gradient(vec(q))); })
        .def_property_readonly("error_scale", &ImplicitPath::error_scale);

    py::class_<SafetyConfig>(m, "SafetyConfig")
        .def(py::init([](double r, double d, double gamma, const std::string& kappa, double omega_max,
                         double clearance) {
                 SafetyConfig c;
                 c.r = r;
                 c.d_exp = d;
                 c.kappa = {gamma, kappa == "linear" ? ClassK::Form::linear : ClassK::Form::cubic};
                 c.omega_max = omega_max;
                 c.clearance = clearance;
                 c.validate();
                 return c;
             }),
             py::arg("r"), py::arg("d") = 0.5, py::arg("gamma") = 1.0, py::arg("kappa") = "cubic",
             py::arg("omega_max") = 1.0, py::arg("clearance") = 0.0)
        .def_readonly("r", &SafetyConfig::r)
        .def_readonly("d", &SafetyConfig::d_exp)
        .def_readonly("omega_max", &SafetyConfig::omega_max);

    py::class_<PairView>(m, "PairView")
        .def_readonly("dist", &PairView::dist)
        .def_readonly("rho", &PairView::rho)
        .def_readonly("cos_phi", &PairView::cos_phi)
        .def_readonly("h", &PairView::h)
        .def_readonly("Lf_h", &PairView::Lf_h)
        .def_readonly("Lg_h_i", &PairView::Lg_h_i)
        .def_readonly("Lg_h_j", &PairView::Lg_h_j)
        .def_readonly("inside_virtual_zone", &PairView::inside_virtual_zone);

    m.def("virtual_radius", &virtual_radius, py::arg("cfg"), py::arg("dist"));
    m.def(
        "pair_view",
        [](const SafetyConfig& cfg, std::pair<double, double> p_i, std::pair<double, double> v_i,
           std::pair<double, double> p_j, std::pair<double, double> v_j) {
            return build_pair_view(cfg, vec(p_i), vec(v_i), vec(p_j), vec(v_j));
        },
        py::arg("cfg"), py::arg("p_i"), py::arg("v_i"), py::arg("p_j"), py::arg("v_j"));
    m.def("h_dot", &h_dot, py::arg("view"), py::arg("u_i"), py::arg("u_j"));
    m.def("psi", &psi, py::arg("view"), py::arg("cfg"), py::arg("u_ref_i"), py::arg("u_j"));
    m.def("u_safe_pair", &u_safe_pair, py::arg("view"), py::arg("cfg"), py::arg("u_ref_i"), py::arg("u_j"));
    m.def(
        "gvf",
        [](const ImplicitPath& path, double k_e, std::pair<double, double> p, bool clockwise) {
            return tup(gvf(path, {k_e, 1.0}, vec(p),
                           clockwise ? Orientation::clockwise : Orientation::counter_clockwise));
        },
        py::arg("path"), py::arg("k_e"), py::arg("p"), py::arg("clockwise") = true);
    m.def("wrap_angle", &wrap_angle);

    py::class_<Scenario>(m, "Scenario")
        .def_readonly("name", &Scenario::name)
        .def_readonly("duration", &Scenario::duration)
        .def_readonly("dt", &Scenario::dt)
        .def_readonly("safety", &Scenario::safety)
        .def_readonly("path", &Scenario::path)
        .def_property_readonly("robot_count", &Scenario::robot_count)
        .def("render", &render_scenario)
        .def(py::self == py::self);

    m.def("preset_names", &preset_names);
    m.def("preset_text", [](const std::string& name) -> std::optional<std::string> {
        auto t = preset_text(name);
        if (!t) return std::nullopt;
        return std::string(*t);
    });
    m.def("parse_scenario",
          [](const std::string& text, const std::vector<std::string>& overrides) {
              return parse_scenario(text, overrides);
          },
          py::arg("text"), py::arg("overrides") = std::vector<std::string>{});
    m.def("load_scenario", &load_scenario_source, py::arg("source"),
          py::arg("overrides") = std::vector<std::string>{},
          "Load a scenario from a file path or 'preset:<name>'.");

    py::class_<SimulationLog>(m, "SimulationLog")
        .def_readonly("steps", &SimulationLog::steps)
        .def_readonly("halted", &SimulationLog::halted)
        .def_property_readonly("robots", &robot_table)
        .def("write_csv",
             [](const SimulationLog& log, const std::string& out_dir, bool force) {
                 std::vector<std::string> paths;
                 for (const auto& p : emit_csv(log.records, out_dir, force)) paths.push_back(p.string());
                 return paths;
             },
             py::arg("out_dir"), py::arg("force") = false);

    m.def(
        "run",
        [](const Scenario& sc, std::uint64_t seed) {
            py::gil_scoped_release release;
            return run_scenario(sc, seed);
        },
        py::arg("scenario"), py::arg("seed") = 1);
    m.def(
        "summarize", [](const SimulationLog& log, const Scenario& sc) { return summary_dict(monitor_report(log, sc)); },
        py::arg("log"), py::arg("scenario"));
    m.def(
        "exit_status",
        [](const SimulationLog& log, const Scenario& sc) {
            return static_cast<int>(classify_run(monitor_report(log, sc), sc));
        },
        py::arg("log"), py::arg("scenario"));
}
