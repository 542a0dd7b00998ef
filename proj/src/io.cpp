#include "ripscover/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ripscover/error.hpp"

namespace ripscover {

namespace {

json point_json(Point2 p) { return json::array({p.x, p.y}); }

Point2 point_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw InvalidScenario("point must be [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Point2> points_from(const json& j) {
    if (!j.is_array()) throw InvalidScenario("expected a list of points");
    std::vector<Point2> out;
    out.reserve(j.size());
    for (const auto& p : j) out.push_back(point_from(p));
    return out;
}

json points_json(const std::vector<Point2>& pts) {
    json a = json::array();
    for (const Point2& p : pts) a.push_back(point_json(p));
    return a;
}

std::string format_real(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path);
    out << text;
}

void write_json_file(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

json scenario_to_json(const Scenario& s) {
    json verts = json::array();
    for (const Point2& p : s.domain().vertices()) verts.push_back(point_json(p));
    const Radii& r = s.radii();
    return {{"dimension", 2},
            {"domain", {{"type", "polygon"}, {"vertices", verts}}},
            {"radii", {{"r_c", r.r_c}, {"r_s", r.r_s}, {"r_w", r.r_w}, {"r_f", r.r_f}}},
            {"epsilon", s.epsilon()},
            {"sensors", points_json(s.sensors())}};
}

Scenario scenario_from_json(const json& j) {
    try {
        if (j.value("dimension", 2) != 2) throw InvalidScenario("only dimension 2 is supported");
        const json& dom = j.at("domain");
        if (dom.value("type", std::string("polygon")) != "polygon") throw InvalidScenario("domain type must be polygon");
        ConvexPolygon poly(points_from(dom.at("vertices")));
        const json& rj = j.at("radii");
        Radii r{rj.at("r_c").get<double>(), rj.at("r_s").get<double>(), rj.at("r_w").get<double>(),
                rj.at("r_f").get<double>()};
        return Scenario(std::move(poly), points_from(j.at("sensors")), r, j.at("epsilon").get<double>());
    } catch (const json::exception& e) {
        throw InvalidScenario(std::string("malformed scenario: ") + e.what());
    }
}

json perturbation_to_json(const Perturbation& p) { return {{"targets", points_json(p.targets)}}; }

Perturbation perturbation_from_json(const json& j) {
    try {
        return Perturbation{points_from(j.at("targets"))};
    } catch (const json::exception& e) {
        throw InvalidScenario(std::string("malformed perturbation: ") + e.what());
    }
}

json correspondence_to_json(const Correspondence& c) {
    json pairs = json::array();
    for (const auto& [a, b] : c.pairs()) pairs.push_back({a, b});
    json rel = nullptr;
    if (c.relative()) rel = {{"A", c.relative()->source}, {"B", c.relative()->target}};
    return {{"pairs", pairs}, {"relative", rel}};
}

Correspondence correspondence_from_json(const json& j, std::size_t n_source, std::size_t n_target) {
    try {
        std::vector<Correspondence::Pair> pairs;
        for (const auto& p : j.at("pairs")) pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
        std::optional<Correspondence::Relative> rel;
        if (j.contains("relative") && !j["relative"].is_null())
            rel = Correspondence::Relative{j["relative"].at("A").get<std::vector<int>>(),
                                           j["relative"].at("B").get<std::vector<int>>()};
        return Correspondence(n_source, n_target, std::move(pairs), std::move(rel));
    } catch (const json::exception& e) {
        throw InvalidCorrespondence(std::string("malformed correspondence: ") + e.what());
    }
}

Chain chain_from_json(const json& j, const ComplexPtr& k) {
    try {
        const int p = j.at("degree").get<int>();
        std::vector<std::pair<std::vector<int>, Rational>> terms;
        for (const auto& t : j.at("terms"))
            terms.emplace_back(t.at("simplex").get<std::vector<int>>(),
                               parse_fraction(t.at("coeff").get<std::string>()));
        return make_chain<Rational>(k, p, terms);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed chain: ") + e.what());
    }
}

json verdict_to_json(const Verdict& v, const std::string& barcode_path) {
    json witness = nullptr;
    if (v.witness) witness = chain_to_json(*v.witness);
    if (v.witness_mod2) witness = chain_to_json(*v.witness_mod2);
    return {{"criterion", v.criterion},
            {"holds", v.holds},
            {"degree", v.degree},
            {"s", v.s},
            {"w", v.w},
            {"witness", witness},
            {"barcode_path", barcode_path}};
}

json coverage_to_json(const Chain& w, const Rational& norm, const std::vector<int>& active,
                      const std::vector<int>& deactivated) {
    return {{"chain", chain_to_json(w)},
            {"l1_norm", to_fraction_string(norm)},
            {"active_sensors", active},
            {"deactivated", deactivated}};
}

std::string barcode_csv(int degree, const std::vector<std::pair<double, double>>& bars) {
    std::string out = "degree,birth,death\n";
    for (const auto& [b, d] : bars) out += std::to_string(degree) + "," + format_real(b) + "," + format_real(d) + "\n";
    return out;
}

std::string points_csv(const std::vector<Point2>& points) {
    std::string out = "x,y\n";
    for (const Point2& p : points) out += format_real(p.x) + "," + format_real(p.y) + "\n";
    return out;
}

}  // namespace ripscover
