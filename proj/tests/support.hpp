#pragma once

// Helpers shared by the unit tests.

#include <cmath>
#include <cstdint>
#include <vector>

#include "ripscover/geometry.hpp"
#include "ripscover/metric.hpp"
#include "ripscover/scenario.hpp"

namespace testing_support {

using ripscover::Point2;

inline std::vector<Point2> random_points(ripscover::UniformStream& u, std::size_t n, double scale) {
    std::vector<Point2> pts(n);
    for (auto& p : pts) {
        p.x = scale * u.next();
        p.y = scale * u.next();
    }
    return pts;
}

inline int random_int(ripscover::UniformStream& u, int n) {
    return std::min(n - 1, static_cast<int>(u.next() * n));
}

// Every index covered, plus a few extra pairs.
inline ripscover::Correspondence random_correspondence(ripscover::UniformStream& u, std::size_t nx, std::size_t ny) {
    std::vector<ripscover::Correspondence::Pair> pairs;
    for (std::size_t i = 0; i < nx; ++i) pairs.emplace_back(static_cast<int>(i), random_int(u, static_cast<int>(ny)));
    for (std::size_t j = 0; j < ny; ++j) pairs.emplace_back(random_int(u, static_cast<int>(nx)), static_cast<int>(j));
    const int extra = random_int(u, 4);
    for (int k = 0; k < extra; ++k)
        pairs.emplace_back(random_int(u, static_cast<int>(nx)), random_int(u, static_cast<int>(ny)));
    return ripscover::Correspondence(nx, ny, pairs);
}

// Relative correspondence between (X, A) and (Y, B) with A = [0, na), B = [0, nb):
// pairs stay inside A x B or inside the complements.
inline ripscover::Correspondence random_relative_correspondence(ripscover::UniformStream& u, std::size_t nx,
                                                                std::size_t na, std::size_t ny, std::size_t nb) {
    auto block = [&](int lo_x, int hi_x, int lo_y, int hi_y, std::vector<ripscover::Correspondence::Pair>& out) {
        if (lo_x == hi_x) return;
        for (int i = lo_x; i < hi_x; ++i) out.emplace_back(i, lo_y + random_int(u, hi_y - lo_y));
        for (int j = lo_y; j < hi_y; ++j) out.emplace_back(lo_x + random_int(u, hi_x - lo_x), j);
    };
    std::vector<ripscover::Correspondence::Pair> pairs;
    const int ix = static_cast<int>(nx), ia = static_cast<int>(na), iy = static_cast<int>(ny), ib = static_cast<int>(nb);
    block(0, ia, 0, ib, pairs);
    block(ia, ix, ib, iy, pairs);
    std::vector<int> a, b;
    for (int i = 0; i < ia; ++i) a.push_back(i);
    for (int j = 0; j < ib; ++j) b.push_back(j);
    return ripscover::Correspondence(nx, ny, pairs, ripscover::Correspondence::Relative{a, b});
}

inline const double kSqrt2 = std::sqrt(2.0);

}  // namespace testing_support
