#include "ripscover/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ripscover/error.hpp"
#include "ripscover/field.hpp"
#include "ripscover/rips.hpp"

namespace ripscover {

std::size_t GridMask::occupied() const {
    return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), std::uint8_t{1}));
}

GridMask rasterize_restricted_domain(const Scenario& s, double step) {
    if (!(step > 0)) throw InvalidArgument("grid step must be positive");
    const auto box = s.domain().bounding_box();
    GridMask m;
    m.x0 = box.xmin;
    m.y0 = box.ymin;
    m.step = step;
    m.nx = static_cast<int>(std::ceil((box.xmax - box.xmin) / step));
    m.ny = static_cast<int>(std::ceil((box.ymax - box.ymin) / step));
    m.cells.assign(static_cast<std::size_t>(m.nx) * static_cast<std::size_t>(m.ny), 0);
    const double rhat = s.radii().r_hat();
    for (int j = 0; j < m.ny; ++j)
        for (int i = 0; i < m.nx; ++i) {
            const Point2 c = m.center(i, j);
            if (s.domain().contains(c) && s.domain().boundary_distance(c) > rhat)
                m.cells[static_cast<std::size_t>(j) * m.nx + i] = 1;
        }
    return m;
}

bool connectivity_check(const GridMask& mask) {
    const std::size_t total = mask.occupied();
    if (total == 0) throw EmptyMask();
    std::vector<std::uint8_t> seen(mask.cells.size(), 0);
    const auto start = static_cast<std::size_t>(std::find(mask.cells.begin(), mask.cells.end(), 1) - mask.cells.begin());
    std::vector<std::size_t> stack{start};
    seen[start] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
        const std::size_t c = stack.back();
        stack.pop_back();
        ++reached;
        const int i = static_cast<int>(c % static_cast<std::size_t>(mask.nx));
        const int j = static_cast<int>(c / static_cast<std::size_t>(mask.nx));
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int k = 0; k < 4; ++k) {
            const int a = i + di[k];
            const int b = j + dj[k];
            if (a < 0 || b < 0 || a >= mask.nx || b >= mask.ny) continue;
            const std::size_t n = static_cast<std::size_t>(b) * mask.nx + a;
            if (mask.cells[n] && !seen[n]) {
                seen[n] = 1;
                stack.push_back(n);
            }
        }
    }
    return reached == total;
}

CoverageOracleResult grid_coverage_check(std::span<const Point2> positions, double r_c, const Scenario& s,
                                         double grid_step) {
    if (!(r_c > 0)) throw InvalidArgument("cover radius must be positive");
    if (!(grid_step > 0) || grid_step > r_c / 20.0) throw InvalidArgument("grid_step must be in (0, r_c/20]");
    const GridMask mask = rasterize_restricted_domain(s, grid_step);
    CoverageOracleResult out;
    out.grid_step = grid_step;
    out.cells = mask.occupied();
    if (out.cells == 0) throw EmptyRestrictedDomain();

    // bucket positions on a grid of width r_c
    const double bw = r_c;
    const int bx = std::max(1, static_cast<int>(std::ceil(mask.nx * grid_step / bw)) + 1);
    const int by = std::max(1, static_cast<int>(std::ceil(mask.ny * grid_step / bw)) + 1);
    std::vector<std::vector<Point2>> buckets(static_cast<std::size_t>(bx) * by);
    auto bucket_of = [&](Point2 p, int& i, int& j) {
        i = static_cast<int>(std::floor((p.x - mask.x0) / bw));
        j = static_cast<int>(std::floor((p.y - mask.y0) / bw));
    };
    for (const Point2& p : positions) {
        int i = 0;
        int j = 0;
        bucket_of(p, i, j);
        i = std::clamp(i, 0, bx - 1);
        j = std::clamp(j, 0, by - 1);
        buckets[static_cast<std::size_t>(j) * bx + i].push_back(p);
    }
    const double rc2 = r_c * r_c;
    for (int j = 0; j < mask.ny; ++j)
        for (int i = 0; i < mask.nx; ++i) {
            if (!mask.at(i, j)) continue;
            const Point2 c = mask.center(i, j);
            int ci = 0;
            int cj = 0;
            bucket_of(c, ci, cj);
            bool hit = false;
            for (int b = std::max(0, cj - 1); b <= std::min(by - 1, cj + 1) && !hit; ++b)
                for (int a = std::max(0, ci - 1); a <= std::min(bx - 1, ci + 1) && !hit; ++a)
                    for (const Point2& p : buckets[static_cast<std::size_t>(b) * bx + a]) {
                        const double dx = p.x - c.x;
                        const double dy = p.y - c.y;
                        if (dx * dx + dy * dy <= rc2) {
                            hit = true;
                            break;
                        }
                    }
            if (!hit) out.uncovered.push_back(c);
        }
    out.covered = out.uncovered.empty();
    return out;
}

namespace {

using Dense = std::vector<std::vector<Rational>>;  // list of column vectors

// Rank of a set of column vectors by Gaussian elimination.
std::size_t column_rank(Dense cols, std::size_t rows) {
    std::size_t rank = 0;
    std::vector<bool> used(cols.size(), false);
    for (std::size_t r = 0; r < rows; ++r) {
        std::size_t piv = cols.size();
        for (std::size_t c = 0; c < cols.size(); ++c)
            if (!used[c] && sgn(cols[c][r]) != 0) {
                piv = c;
                break;
            }
        if (piv == cols.size()) continue;
        used[piv] = true;
        ++rank;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            if (c == piv || sgn(cols[c][r]) == 0) continue;
            const Rational f = cols[c][r] / cols[piv][r];
            for (std::size_t i = 0; i < rows; ++i) cols[c][i] -= f * cols[piv][i];
        }
    }
    return rank;
}

// Null space basis of the matrix whose columns are `cols` (each of length rows).
Dense null_space(const Dense& cols, std::size_t rows) {
    const std::size_t n = cols.size();
    // row-major copy
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(n));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < rows; ++r) a[r][c] = cols[c][r];
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && sgn(a[piv][c]) == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[r], a[piv]);
        const Rational inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(a[i][c]) == 0) continue;
            const Rational f = a[i][c];
            for (std::size_t j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    Dense basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(n, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

std::size_t brute_force_induced_rank(const FilteredComplex& k, int p, double s, double w, bool relative) {
    if (k.size() > kBruteForceLimit)
        throw SizeExceeded("complex has " + std::to_string(k.size()) + " simplices, limit is " +
                           std::to_string(kBruteForceLimit));
    if (s > w) throw InvalidArgument("s must not exceed w");
    if (p < 0) return 0;

    auto in_slice = [&](std::size_t id, double a) {
        if (a < 0) return k.dim(id) == 0;
        return k.value(id) <= a;
    };
    auto chains = [&](int q, double a) {
        std::vector<std::size_t> ids;
        for (std::size_t id = 0; id < k.size(); ++id)
            if (k.dim(id) == q && in_slice(id, a) && !(relative && k.fence(id))) ids.push_back(id);
        return ids;
    };
    auto face_ids = [&](std::size_t id) {
        std::vector<std::pair<std::size_t, int>> out;
        auto v = k.vertices(id);
        for (std::size_t skip = 0; skip < v.size() && v.size() > 1; ++skip) {
            std::vector<int> f;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (i != skip) f.push_back(v[i]);
            auto fid = k.find(f);
            if (!fid) throw SimplexMissing("face missing");
            out.emplace_back(*fid, skip % 2 == 0 ? 1 : -1);
        }
        return out;
    };

    // p-chains of the w-slice index the ambient space
    const std::vector<std::size_t> cw = chains(p, w);
    std::vector<long> pos(k.size(), -1);
    for (std::size_t i = 0; i < cw.size(); ++i) pos[cw[i]] = static_cast<long>(i);
    const std::size_t dim_w = cw.size();
    if (dim_w == 0) return 0;

    // cycles of the s-slice
    const std::vector<std::size_t> cs = chains(p, s);
    Dense cycles;
    if (p == 0) {
        for (std::size_t id : cs) {
            std::vector<Rational> v(dim_w, Rational(0));
            v[static_cast<std::size_t>(pos[id])] = 1;
            cycles.push_back(std::move(v));
        }
    } else {
        const std::vector<std::size_t> lower = chains(p - 1, s);
        std::vector<long> lpos(k.size(), -1);
        for (std::size_t i = 0; i < lower.size(); ++i) lpos[lower[i]] = static_cast<long>(i);
        Dense bd;
        for (std::size_t id : cs) {
            std::vector<Rational> col(lower.size(), Rational(0));
            for (auto [f, sg] : face_ids(id))
                if (lpos[f] >= 0) col[static_cast<std::size_t>(lpos[f])] += sg;
            bd.push_back(std::move(col));
        }
        for (const auto& z : null_space(bd, lower.size())) {
            std::vector<Rational> v(dim_w, Rational(0));
            for (std::size_t i = 0; i < cs.size(); ++i) v[static_cast<std::size_t>(pos[cs[i]])] = z[i];
            cycles.push_back(std::move(v));
        }
    }

    // boundaries of the w-slice
    Dense bounds;
    for (std::size_t id : chains(p + 1, w)) {
        std::vector<Rational> col(dim_w, Rational(0));
        for (auto [f, sg] : face_ids(id))
            if (pos[f] >= 0) col[static_cast<std::size_t>(pos[f])] += sg;
        bounds.push_back(std::move(col));
    }
    const std::size_t rb = column_rank(bounds, dim_w);
    Dense both = bounds;
    both.insert(both.end(), cycles.begin(), cycles.end());
    return column_rank(std::move(both), dim_w) - rb;
}

}  // namespace ripscover
