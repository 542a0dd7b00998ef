#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ripscover/error.hpp"
#include "ripscover/geometry.hpp"

namespace ripscover {

/// Cover, communication (strong and weak) and fence radii, all in coordinate units.
struct Radii {
    double r_c = 0.0;
    double r_s = 0.0;
    double r_w = 0.0;
    double r_f = 0.0;

    /// Collar width around the boundary that the criteria do not certify.
    double r_hat() const;
};

/// Target domain, sensors, radii and perturbation budget. Structural checks
/// (convex domain, sensors inside and distinct, positive radii) run on
/// construction; the coverage assumptions are evaluated by validate_assumptions.
class Scenario {
public:
    Scenario(ConvexPolygon domain, std::vector<Point2> sensors, Radii radii, double epsilon);

    int dimension() const { return 2; }
    const ConvexPolygon& domain() const { return domain_; }
    const std::vector<Point2>& sensors() const { return sensors_; }
    const Radii& radii() const { return radii_; }
    double epsilon() const { return epsilon_; }
    std::size_t size() const { return sensors_.size(); }

    /// Copy with other sensor positions (used for perturbed layouts).
    Scenario with_sensors(std::vector<Point2> sensors) const;

private:
    ConvexPolygon domain_;
    std::vector<Point2> sensors_;
    Radii radii_;
    double epsilon_;
};

/// Target positions f(x_i), in sensor order.
struct Perturbation {
    std::vector<Point2> targets;
};

enum class AssumptionStatus { Pass, Fail, ByConstruction };

struct AssumptionEntry {
    std::string id;  // "A1".."A6"
    AssumptionStatus status = AssumptionStatus::Fail;
    std::string evidence;
};

struct AssumptionReport {
    std::vector<AssumptionEntry> entries;

    bool ok() const;
    const AssumptionEntry& at(const std::string& id) const;
    std::string describe() const;
};

class AssumptionFailure : public Error {
public:
    explicit AssumptionFailure(AssumptionReport report);
    const AssumptionReport& report() const { return report_; }

private:
    AssumptionReport report_;
};

/// Indices i with dist(sensors[i], boundary) <= r_f.
std::vector<int> fence_sensors(const Scenario& s);
std::vector<bool> fence_mask(const Scenario& s);

/// Evaluates A1..A6. A5 rasterizes the restricted domain at `grid_step`
/// (must be <= r_s/10); throws EmptyRestrictedDomain when nothing survives.
AssumptionReport validate_assumptions(const Scenario& s, double grid_step);

/// Relative slack used when A3 compares radii written at the equality bounds.
inline constexpr double kRadiusRelTol = 1e-12;

enum class PerturbationClause { None, StepBound, OutsideDomain, FenceLeftCollar, InteriorEnteredCollar };

struct PerturbationCheck {
    bool ok = true;
    int index = -1;
    PerturbationClause clause = PerturbationClause::None;
    std::string detail;
};

std::string to_string(PerturbationClause c);

/// Checks the step bound, f(X) inside D, f(F) inside the fence collar and
/// f(X - F) outside it. Reports the first violation in sensor order.
PerturbationCheck validate_perturbation(const Scenario& s, const Perturbation& p);

/// Keeps sensors within r_f + eps/2 of the boundary fixed and moves every
/// other one uniformly inside the closed disk of radius eps/2, resampling moves
/// that leave D. Deterministic in `seed`.
Perturbation generate_perturbation(const Scenario& s, std::uint64_t seed);

/// Sensor layouts used by the generator and the test corpus.
struct LayoutOptions {
    enum class Kind { Random, Hex };
    Kind kind = Kind::Hex;
    int count = 100;         // Random
    double spacing = 0.5;    // Hex
    double jitter = 0.0;     // Hex: uniform offset in [-jitter, jitter]^2
    bool random_phase = false;
    /// When set, a ring of sensors at distance r_f/2 from the boundary with this spacing.
    std::optional<double> fence_spacing;
    /// Carve a disk free of non-ring sensors.
    struct Hole {
        Point2 center;
        double radius;
    };
    std::optional<Hole> hole;
};

Scenario generate_scenario(const ConvexPolygon& domain, const Radii& radii, double epsilon,
                           const LayoutOptions& layout, std::uint64_t seed);

/// Radii at the A3 equality bounds for a given r_s.
Radii default_radii(double r_s, double r_f);

/// Reproducible uniform doubles in [0, 1) independent of the standard library's
/// distribution implementations.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed);
    double next();

private:
    std::uint64_t state_;
};

}  // namespace ripscover
