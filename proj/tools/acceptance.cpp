// Acceptance run: one PASS/FAIL line per primary criterion, exit status 1 when
// any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ripscover/corpus.hpp"
#include "ripscover/criteria.hpp"
#include "ripscover/optcycle.hpp"
#include "ripscover/oracle.hpp"

using namespace ripscover;

namespace {

constexpr double kStep = 0.02;
constexpr int kScenarios = 50;
constexpr int kPerturbations = 10;
constexpr std::uint64_t kMaxSeed = 200;

struct Outcome {
    bool pass = true;
    std::string detail;
};

void report(const char* name, const Outcome& o, double seconds) {
    std::printf("%s %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str(), seconds);
    std::fflush(stdout);
}

int random_int(UniformStream& u, int n) { return std::min(n - 1, static_cast<int>(u.next() * n)); }

std::vector<Point2> random_points(UniformStream& u, std::size_t n, double scale) {
    std::vector<Point2> pts(n);
    for (auto& p : pts) p = {scale * u.next(), scale * u.next()};
    return pts;
}

double diameter(const FiniteMetric& d) {
    double m = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j) m = std::max(m, d(i, j));
    return m;
}

std::vector<int> range(std::size_t n) {
    std::vector<int> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<int>(i);
    return out;
}

Correspondence random_correspondence(UniformStream& u, std::size_t nx, std::size_t ny) {
    std::vector<Correspondence::Pair> pairs;
    for (std::size_t i = 0; i < nx; ++i) pairs.emplace_back(static_cast<int>(i), random_int(u, static_cast<int>(ny)));
    for (std::size_t j = 0; j < ny; ++j) pairs.emplace_back(random_int(u, static_cast<int>(nx)), static_cast<int>(j));
    const int extra = 1 + random_int(u, 4);
    for (int k = 0; k < extra; ++k)
        pairs.emplace_back(random_int(u, static_cast<int>(nx)), random_int(u, static_cast<int>(ny)));
    return Correspondence(nx, ny, pairs);
}

// Pairs inside A x B and inside the complements, A = [0, na), B = [0, nb).
Correspondence random_relative_correspondence(UniformStream& u, std::size_t nx, std::size_t na, std::size_t ny,
                                              std::size_t nb) {
    std::vector<Correspondence::Pair> pairs;
    auto block = [&](int lx, int hx, int ly, int hy) {
        for (int i = lx; i < hx; ++i) pairs.emplace_back(i, ly + random_int(u, hy - ly));
        for (int j = ly; j < hy; ++j) pairs.emplace_back(lx + random_int(u, hx - lx), j);
    };
    block(0, static_cast<int>(na), 0, static_cast<int>(nb));
    block(static_cast<int>(na), static_cast<int>(nx), static_cast<int>(nb), static_cast<int>(ny));
    return Correspondence(nx, ny, pairs, Correspondence::Relative{range(na), range(nb)});
}

// 0 and every critical value up to `top` with the midpoints between them, thinned to about a dozen.
std::vector<double> sample_params(const ComplexPtr& s, const ComplexPtr& t, double top) {
    std::vector<double> v = {0.0};
    for (const ComplexPtr& k : {s, t})
        for (std::size_t id = 0; id < k->size(); ++id)
            if (k->value(id) <= top) v.push_back(k->value(id));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<double> out = v;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) out.push_back((v[i] + v[i + 1]) / 2);
    std::sort(out.begin(), out.end());
    std::vector<double> thin;
    for (std::size_t i = 0; i < out.size(); i += out.size() / 12 + 1) thin.push_back(out[i]);
    return thin;
}

struct CorpusEntry {
    Scenario scenario;
    Verdict stable;
    std::vector<Perturbation> perturbations;
};

struct CoveredVerdict {
    std::vector<Point2> positions;
    const Scenario* scenario;
};

std::vector<CorpusEntry> g_corpus;
std::vector<CoveredVerdict> g_covered;
std::size_t g_seeds_tried = 0;

Outcome soundness() {
    std::size_t checks = 0, bad = 0;
    for (std::uint64_t seed = 1; seed <= kMaxSeed && g_corpus.size() < kScenarios; ++seed) {
        ++g_seeds_tried;
        Scenario s = corpus_scenario(seed);
        Verdict v = stable_criterion(s);
        if (!v.holds) continue;
        std::vector<Perturbation> ps;
        for (int k = 0; k < kPerturbations; ++k) ps.push_back(generate_perturbation(s, seed * 1000 + static_cast<std::uint64_t>(k)));
        g_corpus.push_back({std::move(s), std::move(v), std::move(ps)});
    }
    for (const CorpusEntry& e : g_corpus)
        for (const Perturbation& p : e.perturbations) {
            ++checks;
            if (!validate_perturbation(e.scenario, p).ok) {
                ++bad;
                continue;
            }
            const auto r = grid_coverage_check(p.targets, e.scenario.radii().r_c, e.scenario, kStep);
            if (r.covered)
                g_covered.push_back({p.targets, &e.scenario});
            else
                ++bad;
        }
    Outcome o;
    o.pass = g_corpus.size() == kScenarios && bad == 0;
    o.detail = std::to_string(g_corpus.size()) + " scenarios with the stable criterion (seeds 1.." +
               std::to_string(g_seeds_tried) + "), " + std::to_string(checks) + " perturbations, " +
               std::to_string(bad) + " counterexamples";
    return o;
}

Outcome consistency() {
    std::size_t checks = 0, bad = 0;
    for (const CorpusEntry& e : g_corpus) {
        ++checks;
        if (!dsg_criterion(e.scenario).holds) ++bad;
        for (const Perturbation& p : e.perturbations) {
            ++checks;
            if (!dsg_criterion(e.scenario.with_sensors(p.targets)).holds) ++bad;
        }
    }
    Outcome o;
    o.pass = !g_corpus.empty() && bad == 0;
    o.detail = std::to_string(checks) + " dsg evaluations (base and perturbed), " + std::to_string(bad) + " violations";
    return o;
}

Outcome persistence_vs_oracle() {
    UniformStream u(0xacce55);
    std::size_t checks = 0, bad = 0;
    for (int draw = 0; draw < 200; ++draw) {
        const std::size_t n = 1 + static_cast<std::size_t>(random_int(u, 8));
        const FiniteMetric d = FiniteMetric::from_points(random_points(u, n, 2.0));
        std::vector<int> fence;
        for (std::size_t i = 0; i < n; ++i)
            if (u.next() < 0.4) fence.push_back(static_cast<int>(i));
        const ComplexPtr k = build_filtered_rips(d, fence, 3, 3.0);
        for (bool rel : {false, true})
            for (int p = 0; p <= 2; ++p) {
                const auto bc = persistence<Rational>(k, p, rel);
                for (int q = 0; q < 5; ++q) {
                    double s = 3.0 * u.next();
                    double w = 3.0 * u.next();
                    if (s > w) std::swap(s, w);
                    ++checks;
                    if (barcode_rank(bc, s, w) != brute_force_induced_rank(*k, p, s, w, rel)) ++bad;
                }
            }
    }
    Outcome o;
    o.pass = bad == 0;
    o.detail = std::to_string(checks) + " rank comparisons, " + std::to_string(bad) + " mismatches";
    return o;
}

struct InterleavingCase {
    FiniteMetric dx, dy;
    Correspondence c;
    std::vector<int> a, b;
    bool relative;
};

InterleavingCase make_case(UniformStream& u, int kind) {
    if (kind == 0 || kind == 1) {
        const std::size_t nx = 2 + static_cast<std::size_t>(random_int(u, 9));
        const std::size_t ny = 2 + static_cast<std::size_t>(random_int(u, 9));
        const FiniteMetric dx = FiniteMetric::from_points(random_points(u, nx, 1.5));
        const FiniteMetric dy = FiniteMetric::from_points(random_points(u, ny, 1.5));
        if (kind == 0) return {dx, dy, random_correspondence(u, nx, ny), {}, {}, false};
        const std::size_t na = 1 + static_cast<std::size_t>(random_int(u, static_cast<int>(nx) - 1));
        const std::size_t nb = 1 + static_cast<std::size_t>(random_int(u, static_cast<int>(ny) - 1));
        return {dx, dy, random_relative_correspondence(u, nx, na, ny, nb), range(na), range(nb), true};
    }
    if (kind == 2) {
        // collar construction: two far apart blocks, each moved by at most eps/2
        const double eps = 0.1 + 0.3 * u.next();
        const std::size_t n1 = 1 + static_cast<std::size_t>(random_int(u, 5));
        const std::size_t n2 = 1 + static_cast<std::size_t>(random_int(u, 5));
        std::vector<Point2> pts;
        std::vector<int> x1, x2, y1, y2;
        auto add = [&](Point2 p, std::vector<int>& xs, std::vector<int>& ys) {
            xs.push_back(static_cast<int>(pts.size()));
            pts.push_back(p);
            const double r = eps / 2 * u.next();
            const double th = 2 * M_PI * u.next();
            ys.push_back(static_cast<int>(pts.size()));
            pts.push_back({p.x + r * std::cos(th), p.y + r * std::sin(th)});
        };
        for (std::size_t i = 0; i < n1; ++i) add({u.next(), u.next()}, x1, y1);
        for (std::size_t i = 0; i < n2; ++i) add({4 + u.next(), u.next()}, x2, y2);
        const FiniteMetric d = FiniteMetric::from_points(pts);
        const auto cc = collar_correspondence(d, x1, x2, y1, y2, eps, 1 + random_int(u, 2));
        const auto& rel = *cc.correspondence.relative();
        return {d.restrict_to(cc.source_points), d.restrict_to(cc.target_points), cc.correspondence, rel.source,
                rel.target, true};
    }
    // graph of a perturbation keeping the fence and the interior apart
    const std::size_t n = 2 + static_cast<std::size_t>(random_int(u, 9));
    const std::size_t na = 1 + static_cast<std::size_t>(random_int(u, static_cast<int>(n) - 1));
    const auto xs = random_points(u, n, 1.5);
    std::vector<Point2> ys;
    for (const Point2& p : xs) ys.push_back({p.x + 0.1 * (u.next() - 0.5), p.y + 0.1 * (u.next() - 0.5)});
    const std::vector<int> a = range(na);
    return {FiniteMetric::from_points(xs), FiniteMetric::from_points(ys), graph_correspondence(range(n), n, a), a, a,
            true};
}

Outcome interleaving() {
    UniformStream u(0x1417e7);
    std::size_t cases = 0, bad = 0;
    std::string first;
    for (int t = 0; t < 100; ++t) {
        const InterleavingCase ic = make_case(u, t % 4);
        const double eps = distortion(ic.c, ic.dx, ic.dy);
        // full complexes: every parameter up to the largest diameter plus 2 eps is queried
        const double top = std::max(diameter(ic.dx), diameter(ic.dy));
        const ComplexPtr s = build_filtered_rips(ic.dx, ic.a, 3, top + 3 * eps + 0.1);
        const ComplexPtr k = build_filtered_rips(ic.dy, ic.b, 3, top + 3 * eps + 0.1);
        const auto params = sample_params(s, k, top);
        ++cases;
        bool ok = true;
        for (int p = 0; p <= 2 && ok; ++p) {
            const auto chk = check_interleaving<Rational>(s, k, ic.c, eps, p, params, ic.relative);
            if (!chk.ok) {
                ok = false;
                if (first.empty()) first = "; first failure: case " + std::to_string(t) + " " + chk.detail;
            }
        }
        if (!ok) ++bad;
    }
    Outcome o;
    o.pass = bad == 0;
    o.detail = std::to_string(cases) + " correspondences (random, relative, collar, graph), degrees 0-2, " +
               std::to_string(bad) + " failures" + first;
    return o;
}

Outcome uniqueness() {
    UniformStream u(0x5ab0);
    std::size_t cases = 0, comparisons = 0, bad = 0;
    while (cases < 100) {
        const std::size_t nx = 2 + static_cast<std::size_t>(random_int(u, 6));
        const std::size_t ny = 2 + static_cast<std::size_t>(random_int(u, 6));
        const FiniteMetric dx = FiniteMetric::from_points(random_points(u, nx, 1.5));
        const FiniteMetric dy = FiniteMetric::from_points(random_points(u, ny, 1.5));
        const Correspondence c = random_correspondence(u, nx, ny);
        std::vector<int> lo(nx), hi(nx), mid(nx);
        for (std::size_t x = 0; x < nx; ++x) {
            const auto ts = c.targets_of(static_cast<int>(x));
            lo[x] = ts.front();
            hi[x] = ts.back();
            mid[x] = ts[static_cast<std::size_t>(random_int(u, static_cast<int>(ts.size())))];
        }
        if (lo == hi) continue;
        ++cases;
        const double eps = distortion(c, dx, dy);
        const std::vector<int> none;
        const ComplexPtr s = build_filtered_rips(dx, none, 3, 3.0 + 2 * eps);
        const ComplexPtr k = build_filtered_rips(dy, none, 3, 3.0 + 2 * eps);
        bool ok = true;
        for (int p = 0; p <= 2; ++p) {
            HomologyCache<Rational> hs(s, p, false);
            HomologyCache<Rational> ht(k, p, false);
            for (double a : sample_params(s, k, 3.0)) {
                const auto m0 = map_matrix(hs, ht, lo, nudge(a), nudge(a + eps));
                comparisons += 2;
                if (!(m0 == map_matrix(hs, ht, hi, nudge(a), nudge(a + eps)))) ok = false;
                if (!(m0 == map_matrix(hs, ht, mid, nudge(a), nudge(a + eps)))) ok = false;
            }
        }
        if (!ok) ++bad;
    }
    Outcome o;
    o.pass = bad == 0;
    o.detail = std::to_string(cases) + " correspondences, " + std::to_string(comparisons) + " matrix comparisons, " +
               std::to_string(bad) + " with differing maps";
    return o;
}

// Smallest number of unit terms among {-1,0,1} chains homologous to z.
std::optional<Rational> unit_coset_minimum(const Chain& z, bool rel) {
    const FilteredComplex& k = *z.complex;
    std::vector<std::size_t> cells;
    for (std::size_t id : k.of_dim(z.degree))
        if (!(rel && k.fence(id))) cells.push_back(id);
    if (cells.size() > 12) return std::nullopt;
    std::size_t total = 1;
    for (std::size_t i = 0; i < cells.size(); ++i) total *= 3;
    Rational best = l1_norm(z);
    for (std::size_t code = 0; code < total; ++code) {
        Chain c{z.complex, z.degree, {}};
        std::size_t rest = code;
        for (std::size_t id : cells) {
            const int coeff = static_cast<int>(rest % 3) - 1;
            rest /= 3;
            if (coeff != 0) c.terms.emplace_back(id, Rational(coeff));
        }
        if (Rational(static_cast<long>(c.terms.size())) >= best) continue;
        if (!boundary_of(c, rel).is_zero()) continue;
        if (differs_by_boundary(c, z, rel)) best = static_cast<long>(c.terms.size());
    }
    return best;
}

Outcome optimal_cycles() {
    std::size_t runs = 0, bad = 0, hand = 0, hand_bad = 0;
    std::size_t active_total = 0, sensors_total = 0;
    for (const CorpusEntry& e : g_corpus) {
        const Perturbation& p = e.perturbations.front();
        ++runs;
        try {
            const TransportResult t = transport_cycle(e.scenario, *e.stable.witness, p);
            const MinimalCoverage mc = minimal_coverage_cycle(t.fz, e.scenario.radii().r_c);
            bool ok = mc.optimum.norm <= l1_norm(t.fz);
            ok = ok && differs_by_boundary(mc.optimum.chain, t.fz, true);
            std::vector<Point2> pos;
            for (int v : mc.coverage.active) pos.push_back(t.vertex_positions[static_cast<std::size_t>(v)]);
            const auto r = grid_coverage_check(pos, e.scenario.radii().r_c, e.scenario, kStep);
            ok = ok && r.covered;
            if (r.covered) g_covered.push_back({pos, &e.scenario});
            active_total += pos.size();
            sensors_total += e.scenario.size();
            if (!ok) ++bad;
        } catch (const Error& ex) {
            std::fprintf(stderr, "optimize run failed: %s\n", ex.what());
            ++bad;
        }
    }

    // hand instances: random small complexes with few p-simplices
    UniformStream u(0x0c7c1e);
    while (hand < 60) {
        const std::size_t n = 4 + static_cast<std::size_t>(random_int(u, 3));
        std::vector<int> fence;
        for (std::size_t i = 0; i < n; ++i)
            if (u.next() < 0.35) fence.push_back(static_cast<int>(i));
        const bool rel = !fence.empty();
        const ComplexPtr k = build_filtered_rips(FiniteMetric::from_points(random_points(u, n, 1.5)), fence, 2, 1.1);
        Chain z{k, 1, {}};
        for (const auto& iv : persistence<Rational>(k, 1, rel).intervals)
            if (iv.death == kInf) sub_scaled(z.terms, Rational(u.next() < 0.5 ? 1 : -1), iv.representative.terms);
        for (std::size_t id : k->of_dim(2))
            if (!k->fence(id) && u.next() < 0.5) {
                Chain tri{k, 2, {{id, Rational(1)}}};
                sub_scaled(z.terms, Rational(1), boundary_of(tri, rel).terms);
            }
        if (z.is_zero()) continue;
        const auto truth = unit_coset_minimum(z, rel);
        if (!truth) continue;
        ++hand;
        const L1Result r = rel ? l1_optimal_relative_cycle(z) : l1_optimal_cycle(z);
        const bool unit = std::all_of(r.chain.terms.begin(), r.chain.terms.end(),
                                      [](const auto& t) { return abs(t.second) == 1; });
        if (unit ? r.norm != *truth : r.norm > *truth) ++hand_bad;
    }

    Outcome o;
    o.pass = runs == g_corpus.size() && !g_corpus.empty() && bad == 0 && hand_bad == 0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "mean active sensors %.1f of %.1f",
                  runs ? double(active_total) / double(runs) : 0.0, runs ? double(sensors_total) / double(runs) : 0.0);
    o.detail = std::to_string(runs) + " corpus optimize runs, " + std::to_string(bad) + " contract violations, " + buf +
               "; " + std::to_string(hand) + " hand instances, " + std::to_string(hand_bad) + " enumeration mismatches";
    return o;
}

Outcome negative_control() {
    std::size_t agree = 0;
    const int n = 10;
    for (int seed = 1; seed <= n; ++seed) {
        const Scenario s = hole_scenario(static_cast<std::uint64_t>(seed));
        const bool dsg = dsg_criterion(s).holds;
        const auto r = grid_coverage_check(s.sensors(), s.radii().r_c, s, kStep);
        if (!dsg && !r.covered && !r.uncovered.empty()) ++agree;
    }
    Outcome o;
    o.pass = agree == n;
    o.detail = std::to_string(agree) + " of " + std::to_string(n) + " hole scenarios with dsg false and an uncovered witness";
    return o;
}

Outcome grid_halving() {
    std::size_t sampled = 0, flipped = 0;
    for (std::size_t i = 0; i < g_covered.size(); i += 10) {
        ++sampled;
        const CoveredVerdict& c = g_covered[i];
        if (!grid_coverage_check(c.positions, c.scenario->radii().r_c, *c.scenario, kStep / 2).covered) ++flipped;
    }
    Outcome o;
    o.pass = sampled > 0 && flipped == 0;
    o.detail = std::to_string(sampled) + " of " + std::to_string(g_covered.size()) +
               " covered verdicts rechecked at step 0.01, " + std::to_string(flipped) + " flipped";
    return o;
}

}  // namespace

int main() {
    struct Item {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Item> items = {
        {"soundness", soundness},
        {"criterion consistency", consistency},
        {"persistence vs oracle", persistence_vs_oracle},
        {"interleaving diagrams", interleaving},
        {"subordinate map uniqueness", uniqueness},
        {"optimal cycle contracts", optimal_cycles},
        {"negative control", negative_control},
        {"grid halving", grid_halving},
    };
    bool all = true;
    for (const Item& it : items) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = it.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report(it.name, o, sec);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
