#include <cmath>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ripscover/corpus.hpp"
#include "ripscover/criteria.hpp"
#include "ripscover/error.hpp"
#include "ripscover/io.hpp"
#include "ripscover/optcycle.hpp"
#include "ripscover/oracle.hpp"

namespace py = pybind11;
using namespace ripscover;

namespace {

using XY = std::pair<double, double>;

std::vector<Point2> to_points(const std::vector<XY>& v) {
    std::vector<Point2> out;
    out.reserve(v.size());
    for (const auto& [x, y] : v) out.push_back({x, y});
    return out;
}

std::vector<XY> from_points(const std::vector<Point2>& v) {
    std::vector<XY> out;
    out.reserve(v.size());
    for (const Point2& p : v) out.emplace_back(p.x, p.y);
    return out;
}

FieldKind field_of(const std::string& f) {
    if (f == "rational") return FieldKind::Rational;
    if (f == "mod2") return FieldKind::Mod2;
    throw InvalidArgument("field must be rational or mod2");
}

std::string check(const Scenario& s, bool stable, const std::string& field, double grid_step) {
    CriteriaOptions o;
    o.grid_step = grid_step;
    o.field = field_of(field);
    const Verdict v = stable ? stable_criterion(s, o) : dsg_criterion(s, o);
    json j = verdict_to_json(v, "");
    j["rank"] = v.rank;
    json bars = json::array();
    for (const auto& [b, d] : v.bars) bars.push_back({b, std::isinf(d) ? json("inf") : json(d)});
    j["bars"] = bars;
    return j.dump();
}

std::string coverage(const Scenario& s, const std::vector<XY>& positions, double grid_step) {
    const auto r = grid_coverage_check(to_points(positions), s.radii().r_c, s, grid_step);
    return json{{"covered", r.covered}, {"cells", r.cells}, {"uncovered", from_points(r.uncovered)}}.dump();
}

std::string optimize(const Scenario& s, const std::vector<XY>& targets, const std::string& lp) {
    const Verdict v = stable_criterion(s);
    if (!v.holds) throw InvalidArgument("stable criterion does not hold");
    const TransportResult t = transport_cycle(s, *v.witness, Perturbation{to_points(targets)});
    L1Options o;
    if (lp == "exact")
        o.lp.mode = LpMode::Exact;
    else if (lp == "float")
        o.lp.mode = LpMode::Float;
    else if (lp != "auto")
        throw InvalidArgument("lp must be auto, exact or float");
    const MinimalCoverage mc = minimal_coverage_cycle(t.fz, s.radii().r_c, o);
    std::vector<bool> on(t.vertex_positions.size(), false);
    for (int x : mc.coverage.active) on[static_cast<std::size_t>(x)] = true;
    std::vector<int> active, off;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto x = static_cast<std::size_t>(t.vertex_of_sensor[i]);
        (on[x] ? active : off).push_back(static_cast<int>(i));
        on[x] = false;
    }
    json j = coverage_to_json(mc.optimum.chain, mc.optimum.norm, active, off);
    j["input_l1_norm"] = to_fraction_string(mc.optimum.input_norm);
    return j.dump();
}

}  // namespace

PYBIND11_MODULE(_ripscover, m) {
    m.doc() = "Sensor-network coverage by relative persistent homology of Rips complexes";

    py::register_exception<Error>(m, "Error");

    py::class_<Scenario>(m, "Scenario")
        .def_static("from_json", [](const std::string& text) { return scenario_from_json(json::parse(text)); })
        .def("to_json", [](const Scenario& s) { return scenario_to_json(s).dump(); })
        .def_property_readonly("sensors", [](const Scenario& s) { return from_points(s.sensors()); })
        .def_property_readonly("epsilon", &Scenario::epsilon)
        .def_property_readonly("radii",
                               [](const Scenario& s) {
                                   const Radii& r = s.radii();
                                   return py::dict(py::arg("r_c") = r.r_c, py::arg("r_s") = r.r_s,
                                                   py::arg("r_w") = r.r_w, py::arg("r_f") = r.r_f);
                               })
        .def("fence",
             [](const Scenario& s) {
                 std::vector<int> idx;
                 const std::vector<bool> mask = fence_mask(s);
                 for (std::size_t i = 0; i < mask.size(); ++i)
                     if (mask[i]) idx.push_back(static_cast<int>(i));
                 return idx;
             })
        .def("with_sensors", [](const Scenario& s, const std::vector<XY>& p) { return s.with_sensors(to_points(p)); })
        .def("__len__", &Scenario::size);

    m.def("corpus_scenario", &corpus_scenario, py::arg("seed"));
    m.def("hole_scenario", &hole_scenario, py::arg("seed"));
    m.def("check", &check, py::arg("scenario"), py::arg("stable") = false, py::arg("field") = "rational",
          py::arg("grid_step") = 0.02);
    m.def(
        "generate_perturbation",
        [](const Scenario& s, std::uint64_t seed) { return from_points(generate_perturbation(s, seed).targets); },
        py::arg("scenario"), py::arg("seed"));
    m.def(
        "validate_perturbation",
        [](const Scenario& s, const std::vector<XY>& targets) {
            const PerturbationCheck c = validate_perturbation(s, Perturbation{to_points(targets)});
            return py::make_tuple(c.ok, c.index, to_string(c.clause), c.detail);
        },
        py::arg("scenario"), py::arg("targets"));
    m.def("coverage", &coverage, py::arg("scenario"), py::arg("positions"), py::arg("grid_step") = 0.02);
    m.def("optimize", &optimize, py::arg("scenario"), py::arg("targets"), py::arg("lp") = "auto");
}
