#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ripscover/homology.hpp"
#include "ripscover/scenario.hpp"

namespace ripscover {

struct CriteriaOptions {
    double grid_step = 0.02;  // for the A5 rasterization
    FieldKind field = FieldKind::Rational;
};

struct Verdict {
    std::string criterion;  // "dsg" or "stable"
    bool holds = false;
    int degree = 2;
    double s = 0.0;
    double w = 0.0;
    FieldKind field = FieldKind::Rational;
    std::optional<Chain> witness;                   // Rational field
    std::optional<BasicChain<Mod2>> witness_mod2;  // Mod2 field
    std::optional<std::pair<double, double>> witness_bar;
    std::vector<std::pair<double, double>> bars;  // degree-2 barcode of the filtration truncated at s
    std::size_t rank = 0;
    std::size_t collapsed_vertices = 0;
    AssumptionReport report;
};

/// Induced map at (r_s, r_w) on the relative Rips filtration of (X, F).
/// Throws AssumptionFailure.
Verdict dsg_criterion(const Scenario& s, const CriteriaOptions& options = {});

/// Same test at (r_s - eps, r_w + eps).
Verdict stable_criterion(const Scenario& s, const CriteriaOptions& options = {});

/// Criterion at explicit parameters, assumptions not checked.
Verdict criterion_at(const Scenario& s, double a, double b, const std::string& name, FieldKind field);

/// Distinct positions and, per input point, the index of its position.
struct MergedPoints {
    std::vector<Point2> positions;
    std::vector<int> index_of;
};

MergedPoints merge_coincident(const std::vector<Point2>& points);

struct TransportResult {
    Scenario perturbed;
    ComplexPtr complex;  // R(f(X), f(F)) up to r_s
    Chain fz;
    std::vector<int> vertex_of_sensor;  // sensor index -> vertex of `complex`
    std::vector<Point2> vertex_positions;
};

/// f(z) in R(f(X), f(F); r_s), checked to stay nonzero in H_2 at r_w.
/// Coincident targets share one vertex. Throws InvalidArgument when the
/// perturbation is invalid, SimplexMissing, TransportFailure.
TransportResult transport_cycle(const Scenario& s, const Chain& z, const Perturbation& p);

}  // namespace ripscover
