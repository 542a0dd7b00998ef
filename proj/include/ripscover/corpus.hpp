#pragma once

#include <cstdint>

#include "ripscover/scenario.hpp"

namespace ripscover {

/// Side of the square domain used by the generated corpus.
inline constexpr double kCorpusSide = 4.0;

/// r_s = 1 with A3-tight r_c and r_w, r_f = 0.15.
Radii corpus_radii();

/// Jittered hex layout at spacing 0.5 plus a fence ring at spacing 0.4.
LayoutOptions corpus_layout();

/// Corpus scenario with epsilon = 0.1.
Scenario corpus_scenario(std::uint64_t seed);

/// Corpus layout with a disk of radius 2 r_c carved out around the center.
Scenario hole_scenario(std::uint64_t seed);

}  // namespace ripscover
