#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ripscover/homology.hpp"
#include "ripscover/scenario.hpp"

namespace ripscover {

struct RenderOptions {
    double pixels_per_unit = 120.0;
    bool balls = true;
    bool edges = true;  // Rips edges at r_s
};

/// Domain, fence collar, cover balls, Rips edges, perturbation arrows and the
/// support of a cycle. `cycle` vertices index `cycle_positions`.
std::string render_svg(const Scenario& s, const std::optional<Perturbation>& p, const std::optional<Chain>& cycle,
                       const std::vector<Point2>& cycle_positions, const RenderOptions& options = {});

}  // namespace ripscover
