#pragma once

// Ground-truth engines used to validate the topological pipeline. Nothing in
// here depends on the homology module.

#include <cstdint>
#include <span>
#include <vector>

#include "ripscover/geometry.hpp"
#include "ripscover/scenario.hpp"

namespace ripscover {

class FilteredComplex;

/// Row-major occupancy grid; cell (i, j) has center (x0 + (i+.5)h, y0 + (j+.5)h).
struct GridMask {
    double x0 = 0.0;
    double y0 = 0.0;
    double step = 0.0;
    int nx = 0;
    int ny = 0;
    std::vector<std::uint8_t> cells;

    bool at(int i, int j) const { return cells[static_cast<std::size_t>(j) * nx + i] != 0; }
    Point2 center(int i, int j) const { return {x0 + (i + 0.5) * step, y0 + (j + 0.5) * step}; }
    std::size_t occupied() const;
};

/// Cells of the bounding box whose centers lie in D with boundary distance > r_hat.
GridMask rasterize_restricted_domain(const Scenario& s, double step);

/// 4-connectivity of the occupied cells. Throws EmptyMask.
bool connectivity_check(const GridMask& mask);

struct CoverageOracleResult {
    bool covered = false;
    std::vector<Point2> uncovered;  // centers of uncovered cells
    std::size_t cells = 0;
    double grid_step = 0.0;
};

/// Rasterizes D - N_rhat(dD) and reports every cell center farther than r_c
/// from all positions. "covered" is a statement at this grid resolution.
/// Requires grid_step <= r_c/20; throws EmptyRestrictedDomain.
CoverageOracleResult grid_coverage_check(std::span<const Point2> positions, double r_c, const Scenario& s,
                                         double grid_step);

/// Rank of H_p(slice s) -> H_p(slice w) from cycle and boundary spaces by
/// dense rational elimination. Limited to complexes with <= 2000 simplices.
std::size_t brute_force_induced_rank(const FilteredComplex& complex, int p, double s, double w, bool relative);

inline constexpr std::size_t kBruteForceLimit = 2000;

}  // namespace ripscover
