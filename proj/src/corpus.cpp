#include "ripscover/corpus.hpp"

namespace ripscover {

Radii corpus_radii() { return default_radii(1.0, 0.15); }

LayoutOptions corpus_layout() {
    LayoutOptions lo;
    lo.kind = LayoutOptions::Kind::Hex;
    lo.spacing = 0.5;
    lo.jitter = 0.05;
    lo.random_phase = true;
    lo.fence_spacing = 0.4;
    return lo;
}

Scenario corpus_scenario(std::uint64_t seed) {
    return generate_scenario(ConvexPolygon::square(kCorpusSide), corpus_radii(), 0.1, corpus_layout(), seed);
}

Scenario hole_scenario(std::uint64_t seed) {
    const Radii r = corpus_radii();
    LayoutOptions lo = corpus_layout();
    lo.hole = LayoutOptions::Hole{{kCorpusSide / 2, kCorpusSide / 2}, 2 * r.r_c};
    return generate_scenario(ConvexPolygon::square(kCorpusSide), r, 0.1, lo, seed);
}

}  // namespace ripscover
