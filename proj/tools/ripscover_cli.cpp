// ripscover command-line front end.
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ripscover/criteria.hpp"
#include "ripscover/error.hpp"
#include "ripscover/io.hpp"
#include "ripscover/optcycle.hpp"
#include "ripscover/oracle.hpp"
#include "ripscover/render.hpp"

using namespace ripscover;

namespace {

enum Exit { kOk = 0, kInput = 2, kNegative = 3, kInternal = 4 };

struct Settings {
    double grid_step = 0.02;
    std::string field = "rational";
};

// flags > environment > defaults
Settings environment_settings() {
    Settings s;
    if (const char* g = std::getenv("RIPSCOVER_GRID_STEP")) {
        try {
            s.grid_step = std::stod(g);
        } catch (const std::exception&) {
            throw InvalidArgument(std::string("RIPSCOVER_GRID_STEP is not a number: ") + g);
        }
    }
    if (const char* f = std::getenv("RIPSCOVER_FIELD")) s.field = f;
    return s;
}

FieldKind parse_field(const std::string& f) {
    if (f == "rational" || f == "Q") return FieldKind::Rational;
    if (f == "mod2" || f == "Z2") return FieldKind::Mod2;
    throw InvalidArgument("unknown field " + f + " (rational|mod2)");
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        write_text_file(path, text);
}

std::vector<Point2> positions_of(const Scenario& s, const std::optional<Perturbation>& p) {
    if (!p) return s.sensors();
    if (p->targets.size() != s.size()) throw LengthMismatch(s.size(), p->targets.size());
    return p->targets;
}

std::optional<Perturbation> load_perturbation(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return perturbation_from_json(read_json_file(path));
}

// The complex a stored chain refers to: Rips of the merged positions up to r_s.
ComplexPtr chain_complex(const Scenario& s, const MergedPoints& m) {
    const std::vector<bool> base = fence_mask(s);
    std::vector<bool> fence(m.positions.size(), false);
    for (std::size_t i = 0; i < s.size(); ++i)
        if (base[i]) fence[static_cast<std::size_t>(m.index_of[i])] = true;
    std::vector<int> idx;
    for (std::size_t v = 0; v < fence.size(); ++v)
        if (fence[v]) idx.push_back(static_cast<int>(v));
    return build_filtered_rips(FiniteMetric::from_points(m.positions), idx, 3, s.radii().r_s);
}

const json& chain_part(const json& j) {
    if (j.contains("chain")) return j["chain"];
    if (j.contains("witness")) {
        if (j["witness"].is_null()) throw InvalidArgument("verdict has no witness");
        return j["witness"];
    }
    return j;
}

int run_generate(const std::string& domain, double side, const std::string& sensors, double rs,
                 std::optional<double> rc, std::optional<double> rw, double rf, double eps, std::uint64_t seed,
                 double jitter, double fence_spacing, const std::string& hole, const std::string& out) {
    ConvexPolygon poly = ConvexPolygon::square(side);
    if (domain != "square") {
        json dj = read_json_file(domain);
        const json& verts = dj.contains("vertices") ? dj["vertices"] : dj;
        std::vector<Point2> pts;
        for (const auto& v : verts) pts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        poly = ConvexPolygon(std::move(pts));
    }
    Radii r = default_radii(rs, rf);
    if (rc) r.r_c = *rc;
    if (rw) r.r_w = *rw;
    LayoutOptions lo;
    if (sensors.rfind("grid:hex:", 0) == 0) {
        lo.kind = LayoutOptions::Kind::Hex;
        lo.spacing = std::stod(sensors.substr(9));
        lo.jitter = jitter;
        lo.random_phase = true;
    } else {
        lo.kind = LayoutOptions::Kind::Random;
        lo.count = std::stoi(sensors);
    }
    if (fence_spacing > 0) lo.fence_spacing = fence_spacing;
    if (!hole.empty()) {
        double hx = 0, hy = 0, hr = 0;
        if (std::sscanf(hole.c_str(), "%lf,%lf,%lf", &hx, &hy, &hr) != 3) throw InvalidArgument("--hole expects x,y,r");
        lo.hole = LayoutOptions::Hole{{hx, hy}, hr};
    }
    emit(out, scenario_to_json(generate_scenario(poly, r, eps, lo, seed)).dump(2) + "\n");
    return kOk;
}

int run_check(const std::string& scenario, bool stable, const Settings& st, const std::string& out,
              const std::string& barcode) {
    const Scenario s = scenario_from_json(read_json_file(scenario));
    CriteriaOptions o;
    o.grid_step = st.grid_step;
    o.field = parse_field(st.field);
    const Verdict v = stable ? stable_criterion(s, o) : dsg_criterion(s, o);
    if (!barcode.empty()) write_text_file(barcode, barcode_csv(v.degree, v.bars));
    emit(out, verdict_to_json(v, barcode).dump(2) + "\n");
    return v.holds ? kOk : kNegative;
}

int run_perturb(const std::string& scenario, std::uint64_t seed, const std::string& out) {
    const Scenario s = scenario_from_json(read_json_file(scenario));
    emit(out, perturbation_to_json(generate_perturbation(s, seed)).dump(2) + "\n");
    return kOk;
}

int run_verify(const std::string& scenario, const std::string& perturbation, const std::string& cycle,
               const Settings& st, const std::string& witness, const std::string& out) {
    const Scenario s = scenario_from_json(read_json_file(scenario));
    const auto p = load_perturbation(perturbation);
    if (p) {
        const PerturbationCheck pc = validate_perturbation(s, *p);
        if (!pc.ok) throw InvalidArgument("invalid perturbation: " + pc.detail);
    }
    std::vector<Point2> pos = positions_of(s, p);
    if (!cycle.empty()) {
        const json cj = read_json_file(cycle);
        std::vector<Point2> active;
        if (cj.contains("active_sensors")) {
            for (int i : cj["active_sensors"].get<std::vector<int>>()) active.push_back(pos.at(static_cast<std::size_t>(i)));
        } else {
            const MergedPoints m = merge_coincident(pos);
            const Chain z = chain_from_json(chain_part(cj), chain_complex(s, m));
            for (int v : coverage_of_chain(z).active) active.push_back(m.positions[static_cast<std::size_t>(v)]);
        }
        pos = std::move(active);
    }
    const CoverageOracleResult r = grid_coverage_check(pos, s.radii().r_c, s, st.grid_step);
    if (!witness.empty()) write_text_file(witness, points_csv(r.uncovered));
    json j = {{"covered", r.covered},
              {"grid_step", r.grid_step},
              {"cells", r.cells},
              {"uncovered", r.uncovered.size()},
              {"positions", pos.size()}};
    emit(out, j.dump(2) + "\n");
    return r.covered ? kOk : kNegative;
}

int run_optimize(const std::string& scenario, const std::string& perturbation, const Settings& st,
                 const std::string& lp_mode, const std::string& out) {
    const Scenario s = scenario_from_json(read_json_file(scenario));
    const Perturbation p = perturbation_from_json(read_json_file(perturbation));
    CriteriaOptions o;
    o.grid_step = st.grid_step;
    const Verdict v = stable_criterion(s, o);
    if (!v.holds) {
        std::cerr << "stable criterion does not hold; nothing to optimize\n";
        return kNegative;
    }
    const TransportResult t = transport_cycle(s, *v.witness, p);
    L1Options lo;
    if (lp_mode == "exact")
        lo.lp.mode = LpMode::Exact;
    else if (lp_mode == "float")
        lo.lp.mode = LpMode::Float;
    else if (lp_mode != "auto")
        throw InvalidArgument("unknown --lp mode " + lp_mode);
    const MinimalCoverage mc = minimal_coverage_cycle(t.fz, s.radii().r_c, lo);

    // one sensor per active vertex, lowest index first
    std::vector<bool> vertex_active(t.vertex_positions.size(), false);
    for (int v : mc.coverage.active) vertex_active[static_cast<std::size_t>(v)] = true;
    std::vector<int> active;
    std::vector<int> off;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const auto v = static_cast<std::size_t>(t.vertex_of_sensor[i]);
        if (vertex_active[v]) {
            active.push_back(static_cast<int>(i));
            vertex_active[v] = false;
        } else {
            off.push_back(static_cast<int>(i));
        }
    }
    std::vector<Point2> pos;
    for (int i : active) pos.push_back(p.targets[static_cast<std::size_t>(i)]);
    const CoverageOracleResult r = grid_coverage_check(pos, s.radii().r_c, s, st.grid_step);
    emit(out, coverage_to_json(mc.optimum.chain, mc.optimum.norm, active, off).dump(2) + "\n");
    std::cerr << "l1 norm " << to_fraction_string(mc.optimum.input_norm) << " -> "
              << to_fraction_string(mc.optimum.norm) << ", active " << active.size() << " of " << s.size() << "\n";
    if (!r.covered) {
        std::cerr << "oracle found " << r.uncovered.size() << " uncovered cells for the optimized cycle\n";
        return kInternal;
    }
    return kOk;
}

int run_render(const std::string& scenario, const std::string& perturbation, const std::string& cycle,
               bool no_balls, bool no_edges, const std::string& out) {
    const Scenario s = scenario_from_json(read_json_file(scenario));
    const auto p = load_perturbation(perturbation);
    std::optional<Chain> z;
    MergedPoints m = merge_coincident(positions_of(s, p));
    if (!cycle.empty()) z = chain_from_json(chain_part(read_json_file(cycle)), chain_complex(s, m));
    RenderOptions ro;
    ro.balls = !no_balls;
    ro.edges = !no_edges;
    emit(out, render_svg(s, p, z, m.positions, ro));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coverage verification for sensor networks by relative persistent homology of Rips complexes"};
    app.require_subcommand(1);
    Settings st;
    try {
        st = environment_settings();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    }

    auto* gen = app.add_subcommand("generate", "Write a scenario JSON");
    std::string domain = "square", sensors = "grid:hex:0.5", hole, out;
    double side = 4.0, rs = 1.0, rf = 0.15, eps = 0.1, jitter = 0.05, fence_spacing = 0.4;
    std::optional<double> rc, rw;
    std::uint64_t seed = 1;
    gen->add_option("--domain", domain, "square or a JSON file with counterclockwise vertices")->capture_default_str();
    gen->add_option("--side", side, "side of the square domain")->capture_default_str();
    gen->add_option("--sensors", sensors, "sensor count (uniform random) or grid:hex:SPACING")->capture_default_str();
    gen->add_option("--rs", rs, "strong communication radius")->capture_default_str();
    gen->add_option("--rc", rc, "cover radius (default r_s/sqrt 2)");
    gen->add_option("--rw", rw, "weak communication radius (default r_s*sqrt 10)");
    gen->add_option("--rf", rf, "fence radius")->capture_default_str();
    gen->add_option("--epsilon", eps, "perturbation budget")->capture_default_str();
    gen->add_option("--seed", seed, "random seed")->capture_default_str();
    gen->add_option("--jitter", jitter, "hex layout jitter")->capture_default_str();
    gen->add_option("--fence-spacing", fence_spacing, "spacing of the fence ring, 0 for none")->capture_default_str();
    gen->add_option("--hole", hole, "carve a disk x,y,r free of interior sensors");
    gen->add_option("--out", out, "output file (default stdout)");

    auto* chk = app.add_subcommand("check", "Evaluate the coverage criterion");
    std::string scenario, barcode;
    bool stable = false;
    std::optional<double> grid_flag;
    std::optional<std::string> field_flag;
    chk->add_option("--scenario", scenario, "scenario JSON")->required();
    chk->add_flag("--stable", stable, "perturbation-stable criterion at (r_s - eps, r_w + eps)");
    chk->add_option("--barcode", barcode, "write the degree-2 barcode CSV here");
    chk->add_option("--grid-step", grid_flag, "rasterization step for the connectivity assumption");
    chk->add_option("--field", field_flag, "coefficient field: rational or mod2");
    chk->add_option("--out", out, "verdict JSON (default stdout)");

    auto* per = app.add_subcommand("perturb", "Generate a valid perturbation");
    per->add_option("--scenario", scenario, "scenario JSON")->required();
    per->add_option("--seed", seed, "random seed")->capture_default_str();
    per->add_option("--out", out, "perturbation JSON (default stdout)");

    auto* ver = app.add_subcommand("verify", "Grid oracle coverage of the restricted domain");
    std::string perturbation, cycle, witness;
    ver->add_option("--scenario", scenario, "scenario JSON")->required();
    ver->add_option("--perturbation", perturbation, "use perturbed positions");
    ver->add_option("--cycle", cycle, "only the sensors of this cycle or coverage JSON");
    ver->add_option("--grid-step", grid_flag, "oracle grid step (at most r_c/20)");
    ver->add_option("--witness", witness, "write uncovered cell centers as CSV");
    ver->add_option("--out", out, "result JSON (default stdout)");

    auto* opt = app.add_subcommand("optimize", "Minimal coverage cycle after a perturbation");
    std::string lp_mode = "auto";
    opt->add_option("--scenario", scenario, "scenario JSON")->required();
    opt->add_option("--perturbation", perturbation, "perturbation JSON")->required();
    opt->add_option("--grid-step", grid_flag, "oracle grid step");
    opt->add_option("--lp", lp_mode, "auto, exact or float")->capture_default_str();
    opt->add_option("--out", out, "cycle JSON (default stdout)");

    auto* ren = app.add_subcommand("render", "SVG figure");
    bool no_balls = false, no_edges = false;
    ren->add_option("--scenario", scenario, "scenario JSON")->required();
    ren->add_option("--perturbation", perturbation, "draw displacement arrows and use perturbed positions");
    ren->add_option("--cycle", cycle, "highlight this cycle");
    ren->add_flag("--no-balls", no_balls, "omit cover balls");
    ren->add_flag("--no-edges", no_edges, "omit Rips edges");
    ren->add_option("--out", out, "SVG file (default stdout)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }
    if (grid_flag) st.grid_step = *grid_flag;
    if (field_flag) st.field = *field_flag;

    try {
        if (*gen)
            return run_generate(domain, side, sensors, rs, rc, rw, rf, eps, seed, jitter, fence_spacing, hole, out);
        if (*chk) return run_check(scenario, stable, st, out, barcode);
        if (*per) return run_perturb(scenario, seed, out);
        if (*ver) return run_verify(scenario, perturbation, cycle, st, witness, out);
        if (*opt) return run_optimize(scenario, perturbation, st, lp_mode, out);
        if (*ren) return run_render(scenario, perturbation, cycle, no_balls, no_edges, out);
    } catch (const AssumptionFailure& e) {
        std::cerr << "assumptions failed:\n" << e.report().describe() << "\n";
        return kInput;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const InvalidScenario& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const EmptyRestrictedDomain& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const LengthMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const InvalidCorrespondence& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const SimplexMissing& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad number: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kInternal;
}
