#include "ripscover/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ripscover/oracle.hpp"

namespace ripscover {

double Radii::r_hat() const { return r_f + r_s / std::numbers::sqrt2; }

Scenario::Scenario(ConvexPolygon domain, std::vector<Point2> sensors, Radii radii, double epsilon)
    : domain_(std::move(domain)), sensors_(std::move(sensors)), radii_(radii), epsilon_(epsilon) {
    if (!(radii_.r_c > 0) || !(radii_.r_s > 0) || !(radii_.r_w > 0) || !(radii_.r_f > 0))
        throw InvalidScenario("radii must be positive");
    if (!(epsilon_ >= 0) || !std::isfinite(epsilon_)) throw InvalidScenario("epsilon must be a nonnegative real");
    for (std::size_t i = 0; i < sensors_.size(); ++i) {
        const Point2 p = sensors_[i];
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw InvalidScenario("sensor coordinates must be finite");
        if (!domain_.contains(p)) throw InvalidScenario("sensor " + std::to_string(i) + " lies outside the domain");
    }
    std::vector<Point2> sorted = sensors_;
    std::sort(sorted.begin(), sorted.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidScenario("sensor positions must be pairwise distinct");
}

Scenario Scenario::with_sensors(std::vector<Point2> sensors) const {
    return Scenario(domain_, std::move(sensors), radii_, epsilon_);
}

bool AssumptionReport::ok() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const AssumptionEntry& e) { return e.status != AssumptionStatus::Fail; });
}

const AssumptionEntry& AssumptionReport::at(const std::string& id) const {
    for (const auto& e : entries)
        if (e.id == id) return e;
    throw InvalidArgument("no assumption entry " + id);
}

std::string AssumptionReport::describe() const {
    std::ostringstream os;
    for (const auto& e : entries) {
        const char* st = e.status == AssumptionStatus::Pass   ? "pass"
                         : e.status == AssumptionStatus::Fail ? "FAIL"
                                                              : "by-construction";
        os << e.id << ": " << st << " (" << e.evidence << ")\n";
    }
    return os.str();
}

AssumptionFailure::AssumptionFailure(AssumptionReport report)
    : Error("coverage assumptions violated:\n" + report.describe()), report_(std::move(report)) {}

std::vector<int> fence_sensors(const Scenario& s) {
    std::vector<int> out;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.domain().boundary_distance(s.sensors()[i]) <= s.radii().r_f) out.push_back(static_cast<int>(i));
    return out;
}

std::vector<bool> fence_mask(const Scenario& s) {
    std::vector<bool> mask(s.size(), false);
    for (int i : fence_sensors(s)) mask[static_cast<std::size_t>(i)] = true;
    return mask;
}

namespace {

bool at_least(double lhs, double rhs) { return lhs >= rhs * (1.0 - kRadiusRelTol); }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

AssumptionReport validate_assumptions(const Scenario& s, double grid_step) {
    const Radii& r = s.radii();
    if (!(grid_step > 0) || grid_step > r.r_s / 10.0)
        throw InvalidArgument("grid_step must be in (0, r_s/10]");
    AssumptionReport rep;
    rep.entries.push_back({"A1", AssumptionStatus::Pass, "r_c = " + fmt(r.r_c)});
    rep.entries.push_back({"A2", AssumptionStatus::Pass, "r_s = " + fmt(r.r_s) + ", r_w = " + fmt(r.r_w)});

    const double rc_min = r.r_s / std::numbers::sqrt2;
    const double rw_min = r.r_s * std::sqrt(10.0);
    const bool rc_ok = at_least(r.r_c, rc_min);
    const bool rw_ok = at_least(r.r_w, rw_min);
    std::string a3;
    if (!rc_ok) a3 += "r_c = " + fmt(r.r_c) + " < r_s/sqrt2 = " + fmt(rc_min) + "; ";
    if (!rw_ok) a3 += "r_w = " + fmt(r.r_w) + " < r_s*sqrt10 = " + fmt(rw_min) + "; ";
    if (a3.empty()) a3 = "r_c >= " + fmt(rc_min) + ", r_w >= " + fmt(rw_min);
    rep.entries.push_back({"A3", rc_ok && rw_ok ? AssumptionStatus::Pass : AssumptionStatus::Fail, a3});

    const auto fence = fence_sensors(s);
    rep.entries.push_back({"A4", AssumptionStatus::Pass,
                           "compact convex domain; |F| = " + std::to_string(fence.size()) + " of " +
                               std::to_string(s.size()) + " sensors within r_f = " + fmt(r.r_f)});

    const GridMask mask = rasterize_restricted_domain(s, grid_step);
    if (mask.occupied() == 0) throw EmptyRestrictedDomain();
    const bool connected = connectivity_check(mask);
    rep.entries.push_back({"A5", connected ? AssumptionStatus::Pass : AssumptionStatus::Fail,
                           std::to_string(mask.occupied()) + " cells at step " + fmt(grid_step) +
                               (connected ? ", 4-connected" : ", disconnected")});

    const double half_in = 0.5 * s.domain().inradius();
    if (r.r_hat() < half_in) {
        rep.entries.push_back({"A6", AssumptionStatus::ByConstruction,
                               "convex polygon, r_hat = " + fmt(r.r_hat()) + " < inradius/2 = " + fmt(half_in)});
    } else {
        rep.entries.push_back({"A6", AssumptionStatus::Fail,
                               "r_hat = " + fmt(r.r_hat()) + " >= inradius/2 = " + fmt(half_in)});
    }
    return rep;
}

std::string to_string(PerturbationClause c) {
    switch (c) {
        case PerturbationClause::None: return "none";
        case PerturbationClause::StepBound: return "step-bound";
        case PerturbationClause::OutsideDomain: return "outside-domain";
        case PerturbationClause::FenceLeftCollar: return "fence-left-collar";
        case PerturbationClause::InteriorEnteredCollar: return "interior-entered-collar";
    }
    return "unknown";
}

PerturbationCheck validate_perturbation(const Scenario& s, const Perturbation& p) {
    if (p.targets.size() != s.size()) throw LengthMismatch(s.size(), p.targets.size());
    const double half = 0.5 * s.epsilon();
    const double rf = s.radii().r_f;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Point2 x = s.sensors()[i];
        const Point2 fx = p.targets[i];
        const int idx = static_cast<int>(i);
        const double step = distance(x, fx);
        if (step > half + kGeomTol)
            return {false, idx, PerturbationClause::StepBound,
                    "moved " + fmt(step) + " > eps/2 = " + fmt(half)};
        if (!s.domain().contains(fx)) return {false, idx, PerturbationClause::OutsideDomain, "target outside D"};
        const bool was_fence = s.domain().boundary_distance(x) <= rf;
        const double d_after = s.domain().boundary_distance(fx);
        if (was_fence && d_after > rf)
            return {false, idx, PerturbationClause::FenceLeftCollar,
                    "fence sensor moved to boundary distance " + fmt(d_after) + " > r_f"};
        if (!was_fence && d_after <= rf)
            return {false, idx, PerturbationClause::InteriorEnteredCollar,
                    "interior sensor moved to boundary distance " + fmt(d_after) + " <= r_f"};
    }
    return {};
}

UniformStream::UniformStream(std::uint64_t seed) : state_(seed) {}

double UniformStream::next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

Perturbation generate_perturbation(const Scenario& s, std::uint64_t seed) {
    Perturbation out{s.sensors()};
    const double half = 0.5 * s.epsilon();
    if (!(half > 0)) return out;
    const double keep = s.radii().r_f + half;
    const double rf = s.radii().r_f;
    UniformStream rng(seed);
    constexpr int kMaxTries = 1000;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Point2 x = s.sensors()[i];
        if (s.domain().boundary_distance(x) <= keep) continue;
        for (int attempt = 0; attempt < kMaxTries; ++attempt) {
            const double radius = half * std::sqrt(rng.next());
            const double angle = 2.0 * std::numbers::pi * rng.next();
            const Point2 y{x.x + radius * std::cos(angle), x.y + radius * std::sin(angle)};
            if (distance(x, y) > half) continue;
            if (!s.domain().contains(y) || s.domain().boundary_distance(y) <= rf) continue;
            out.targets[i] = y;
            break;
        }
    }
    return out;
}

Radii default_radii(double r_s, double r_f) {
    return Radii{r_s / std::numbers::sqrt2, r_s, r_s * std::sqrt(10.0), r_f};
}

Scenario generate_scenario(const ConvexPolygon& domain, const Radii& radii, double epsilon,
                           const LayoutOptions& layout, std::uint64_t seed) {
    UniformStream rng(seed);
    const auto box = domain.bounding_box();
    std::vector<Point2> pts;
    if (layout.kind == LayoutOptions::Kind::Random) {
        if (layout.count < 0) throw InvalidArgument("sensor count must be nonnegative");
        while (static_cast<int>(pts.size()) < layout.count) {
            const Point2 p{box.xmin + (box.xmax - box.xmin) * rng.next(), box.ymin + (box.ymax - box.ymin) * rng.next()};
            if (domain.contains(p)) pts.push_back(p);
        }
    } else {
        const double h = layout.spacing;
        if (!(h > 0)) throw InvalidArgument("hex spacing must be positive");
        const double row_h = h * std::sqrt(3.0) / 2.0;
        const double ox = layout.random_phase ? h * rng.next() : 0.0;
        const double oy = layout.random_phase ? row_h * rng.next() : 0.0;
        int row = 0;
        for (double y = box.ymin + oy; y <= box.ymax + 1e-12; y += row_h, ++row) {
            const double shift = (row % 2) ? 0.5 * h : 0.0;
            for (double x = box.xmin + ox + shift; x <= box.xmax + 1e-12; x += h) {
                Point2 p{x, y};
                if (layout.jitter > 0) {
                    p.x += layout.jitter * (2.0 * rng.next() - 1.0);
                    p.y += layout.jitter * (2.0 * rng.next() - 1.0);
                }
                if (domain.contains(p)) pts.push_back(p);
            }
        }
    }
    if (layout.hole) {
        const auto& hole = *layout.hole;
        std::erase_if(pts, [&](Point2 p) { return distance(p, hole.center) <= hole.radius; });
    }
    if (layout.fence_spacing) {
        const double sp = *layout.fence_spacing;
        if (!(sp > 0)) throw InvalidArgument("fence spacing must be positive");
        const double inset = 0.5 * radii.r_f;
        // interior layout points inside the ring strip would crowd the fence
        std::erase_if(pts, [&](Point2 p) { return domain.boundary_distance(p) <= radii.r_f; });
        const ConvexPolygon ring = domain.inset(inset);
        const double per = ring.perimeter();
        const int count = std::max(3, static_cast<int>(std::ceil(per / sp)));
        for (int k = 0; k < count; ++k) pts.push_back(ring.point_at_arclength(per * k / count));
    }
    // enforce distinct positions
    std::vector<Point2> unique;
    for (const Point2& p : pts) {
        bool dup = false;
        for (const Point2& q : unique)
            if (distance(p, q) < 1e-9) {
                dup = true;
                break;
            }
        if (!dup) unique.push_back(p);
    }
    return Scenario(domain, std::move(unique), radii, epsilon);
}

}  // namespace ripscover
