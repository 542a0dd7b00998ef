#include "ripscover/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ripscover/error.hpp"
#include "ripscover/scenario.hpp"

namespace ripscover {

namespace {

constexpr std::size_t kExhaustiveTriangleLimit = 64;
constexpr std::size_t kTriangleSamples = 20000;

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

}  // namespace

FiniteMetric::FiniteMetric(std::size_t n, std::vector<double> distances) : n_(n), d_(std::move(distances)) {
    if (d_.size() != n_ * n_) throw InvalidMetric("distance matrix must be n x n");
    double scale = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        if ((*this)(i, i) != 0.0) throw InvalidMetric("nonzero diagonal at " + std::to_string(i));
        for (std::size_t j = 0; j < n_; ++j) {
            const double v = (*this)(i, j);
            if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidMetric("distances must be finite and nonnegative");
            if (v != (*this)(j, i)) throw InvalidMetric("distance matrix is not symmetric");
            scale = std::max(scale, v);
        }
    }
    const double tol = 1e-9 * std::max(1.0, scale);
    auto check = [&](std::size_t i, std::size_t j, std::size_t k) {
        if ((*this)(i, k) > (*this)(i, j) + (*this)(j, k) + tol)
            throw InvalidMetric("triangle inequality fails at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                                std::to_string(k) + ")");
    };
    if (n_ <= kExhaustiveTriangleLimit) {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j)
                for (std::size_t k = 0; k < n_; ++k) check(i, j, k);
    } else {
        UniformStream rng(0x5eed);
        for (std::size_t t = 0; t < kTriangleSamples; ++t) {
            const auto pick = [&] { return static_cast<std::size_t>(rng.next() * static_cast<double>(n_)); };
            check(pick(), pick(), pick());
        }
    }
}

FiniteMetric FiniteMetric::from_points(std::span<const Point2> points) {
    const std::size_t n = points.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i * n + j] = d[j * n + i] = distance(points[i], points[j]);
    return FiniteMetric(n, std::move(d));
}

FiniteMetric FiniteMetric::restrict_to(std::span<const int> indices) const {
    const std::size_t m = indices.size();
    std::vector<double> d(m * m, 0.0);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
            d[a * m + b] = (*this)(static_cast<std::size_t>(indices[a]), static_cast<std::size_t>(indices[b]));
    return FiniteMetric(m, std::move(d));
}

Correspondence::Correspondence(std::size_t n_source, std::size_t n_target, std::vector<Pair> pairs,
                               std::optional<Relative> relative)
    : n_source_(n_source), n_target_(n_target), pairs_(std::move(pairs)), relative_(std::move(relative)) {
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
    std::vector<bool> seen_s(n_source_, false);
    std::vector<bool> seen_t(n_target_, false);
    for (const auto& [x, y] : pairs_) {
        if (x < 0 || static_cast<std::size_t>(x) >= n_source_ || y < 0 || static_cast<std::size_t>(y) >= n_target_)
            throw InvalidCorrespondence("pair index out of range");
        seen_s[static_cast<std::size_t>(x)] = true;
        seen_t[static_cast<std::size_t>(y)] = true;
    }
    for (std::size_t i = 0; i < n_source_; ++i)
        if (!seen_s[i]) throw InvalidCorrespondence("source index " + std::to_string(i) + " is unrelated");
    for (std::size_t j = 0; j < n_target_; ++j)
        if (!seen_t[j]) throw InvalidCorrespondence("target index " + std::to_string(j) + " is unrelated");

    offsets_.assign(n_source_ + 1, 0);
    for (const auto& pr : pairs_) ++offsets_[static_cast<std::size_t>(pr.first) + 1];
    for (std::size_t i = 0; i < n_source_; ++i) offsets_[i + 1] += offsets_[i];
    targets_.reserve(pairs_.size());
    for (const auto& pr : pairs_) targets_.push_back(pr.second);

    if (relative_) {
        relative_->source = sorted_unique(relative_->source);
        relative_->target = sorted_unique(relative_->target);
        for (int a : relative_->source)
            if (a < 0 || static_cast<std::size_t>(a) >= n_source_) throw InvalidCorrespondence("subset A out of range");
        for (int b : relative_->target)
            if (b < 0 || static_cast<std::size_t>(b) >= n_target_) throw InvalidCorrespondence("subset B out of range");
        const std::vector<bool> in_a = [&] {
            std::vector<bool> m(n_source_, false);
            for (int a : relative_->source) m[static_cast<std::size_t>(a)] = true;
            return m;
        }();
        const std::vector<bool> in_b = [&] {
            std::vector<bool> m(n_target_, false);
            for (int b : relative_->target) m[static_cast<std::size_t>(b)] = true;
            return m;
        }();
        for (const auto& [x, y] : pairs_) {
            const bool xa = in_a[static_cast<std::size_t>(x)];
            const bool yb = in_b[static_cast<std::size_t>(y)];
            if (xa && !yb) throw InvalidCorrespondence("C(A) is not contained in B");
            if (yb && !xa) throw InvalidCorrespondence("C^T(B) is not contained in A");
        }
    }
}

Correspondence Correspondence::identity(std::size_t n, std::optional<std::vector<int>> subset) {
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < n; ++i) pairs.emplace_back(static_cast<int>(i), static_cast<int>(i));
    std::optional<Relative> rel;
    if (subset) rel = Relative{*subset, *subset};
    return Correspondence(n, n, std::move(pairs), std::move(rel));
}

std::span<const int> Correspondence::targets_of(int source) const {
    const auto s = static_cast<std::size_t>(source);
    return {targets_.data() + offsets_[s], offsets_[s + 1] - offsets_[s]};
}

std::vector<int> Correspondence::image(std::span<const int> sources) const {
    std::vector<int> out;
    for (int x : sources) {
        auto t = targets_of(x);
        out.insert(out.end(), t.begin(), t.end());
    }
    return sorted_unique(std::move(out));
}

bool Correspondence::contains(int source, int target) const {
    auto t = targets_of(source);
    return std::binary_search(t.begin(), t.end(), target);
}

double distortion(const Correspondence& c, const FiniteMetric& dx, const FiniteMetric& dy) {
    if (dx.size() != c.source_size() || dy.size() != c.target_size())
        throw InvalidArgument("metric sizes do not match the correspondence");
    double best = 0.0;
    const auto& p = c.pairs();
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b) {
            const double v = std::abs(dx(static_cast<std::size_t>(p[a].first), static_cast<std::size_t>(p[b].first)) -
                                      dy(static_cast<std::size_t>(p[a].second), static_cast<std::size_t>(p[b].second)));
            best = std::max(best, v);
        }
    return best;
}

double gromov_hausdorff_upper_bound(const Correspondence& c, const FiniteMetric& dx, const FiniteMetric& dy) {
    return 0.5 * distortion(c, dx, dy);
}

Correspondence transpose(const Correspondence& c) {
    std::vector<Correspondence::Pair> pairs;
    pairs.reserve(c.pairs().size());
    for (const auto& [x, y] : c.pairs()) pairs.emplace_back(y, x);
    std::optional<Correspondence::Relative> rel;
    if (c.relative()) rel = Correspondence::Relative{c.relative()->target, c.relative()->source};
    return Correspondence(c.target_size(), c.source_size(), std::move(pairs), std::move(rel));
}

Correspondence compose(const Correspondence& c, const Correspondence& d) {
    if (c.target_size() != d.source_size()) throw InvalidArgument("composition index ranges do not match");
    std::vector<Correspondence::Pair> pairs;
    for (const auto& [x, y] : c.pairs())
        for (int z : d.targets_of(y)) pairs.emplace_back(x, z);
    std::optional<Correspondence::Relative> rel;
    if (c.relative() && d.relative() && c.relative()->target == d.relative()->source)
        rel = Correspondence::Relative{c.relative()->source, d.relative()->target};
    return Correspondence(c.source_size(), d.target_size(), std::move(pairs), std::move(rel));
}

Correspondence graph_correspondence(std::span<const int> f, std::size_t n_target, std::span<const int> subset) {
    const std::size_t n = f.size();
    std::vector<bool> in_a(n, false);
    for (int a : subset) {
        if (a < 0 || static_cast<std::size_t>(a) >= n) throw InvalidArgument("subset index out of range");
        in_a[static_cast<std::size_t>(a)] = true;
    }
    constexpr int kNone = -1;
    std::vector<int> owner_a(n_target, kNone);
    std::vector<int> owner_rest(n_target, kNone);
    for (std::size_t x = 0; x < n; ++x) {
        const int y = f[x];
        if (y < 0 || static_cast<std::size_t>(y) >= n_target) throw InvalidArgument("map value out of range");
        auto& slot = in_a[x] ? owner_a[static_cast<std::size_t>(y)] : owner_rest[static_cast<std::size_t>(y)];
        if (slot == kNone) slot = static_cast<int>(x);
    }
    for (std::size_t y = 0; y < n_target; ++y)
        if (owner_a[y] != kNone && owner_rest[y] != kNone) throw CollisionError(owner_a[y], owner_rest[y]);

    std::vector<Correspondence::Pair> pairs;
    std::vector<int> image_a;
    for (std::size_t x = 0; x < n; ++x) {
        pairs.emplace_back(static_cast<int>(x), f[x]);
        if (in_a[x]) image_a.push_back(f[x]);
    }
    return Correspondence(n, n_target, std::move(pairs),
                          Correspondence::Relative{std::vector<int>(subset.begin(), subset.end()), image_a});
}

double hausdorff_distance(const FiniteMetric& d, std::span<const int> p, std::span<const int> q) {
    if (p.empty() || q.empty()) throw EmptySet("Hausdorff distance needs nonempty sets");
    auto directed = [&](std::span<const int> a, std::span<const int> b) {
        double sup = 0.0;
        for (int x : a) {
            double inf = std::numeric_limits<double>::infinity();
            for (int y : b) inf = std::min(inf, d(static_cast<std::size_t>(x), static_cast<std::size_t>(y)));
            sup = std::max(sup, inf);
        }
        return sup;
    };
    return std::max(directed(p, q), directed(q, p));
}

CollarCorrespondence collar_correspondence(const FiniteMetric& common, std::span<const int> x1,
                                           std::span<const int> x2, std::span<const int> y1,
                                           std::span<const int> y2, double eps, int relative_block) {
    if (relative_block != 1 && relative_block != 2) throw InvalidArgument("relative block must be 1 or 2");
    auto disjoint = [](std::span<const int> a, std::span<const int> b) {
        for (int u : a)
            if (std::find(b.begin(), b.end(), u) != b.end()) return false;
        return true;
    };
    if (!disjoint(x1, x2)) throw PreconditionViolated("X1 and X2 intersect");
    if (!disjoint(y1, y2)) throw PreconditionViolated("Y1 and Y2 intersect");
    const double half = 0.5 * eps;
    const double tol = 1e-12 * std::max(1.0, eps);
    if (hausdorff_distance(common, x1, y1) > half + tol) throw PreconditionViolated("d_H(X1, Y1) > eps/2");
    if (hausdorff_distance(common, x2, y2) > half + tol) throw PreconditionViolated("d_H(X2, Y2) > eps/2");

    CollarCorrespondence out{Correspondence::identity(0), {}, {}};
    out.source_points.assign(x1.begin(), x1.end());
    out.source_points.insert(out.source_points.end(), x2.begin(), x2.end());
    out.target_points.assign(y1.begin(), y1.end());
    out.target_points.insert(out.target_points.end(), y2.begin(), y2.end());

    std::vector<Correspondence::Pair> pairs;
    auto block = [&](std::size_t s_off, std::span<const int> xs, std::size_t t_off, std::span<const int> ys) {
        for (std::size_t a = 0; a < xs.size(); ++a)
            for (std::size_t b = 0; b < ys.size(); ++b)
                if (common(static_cast<std::size_t>(xs[a]), static_cast<std::size_t>(ys[b])) <= half + tol)
                    pairs.emplace_back(static_cast<int>(s_off + a), static_cast<int>(t_off + b));
    };
    block(0, x1, 0, y1);
    block(x1.size(), x2, y1.size(), y2);

    Correspondence::Relative rel;
    const std::size_t s_off = relative_block == 1 ? 0 : x1.size();
    const std::size_t s_len = relative_block == 1 ? x1.size() : x2.size();
    const std::size_t t_off = relative_block == 1 ? 0 : y1.size();
    const std::size_t t_len = relative_block == 1 ? y1.size() : y2.size();
    for (std::size_t i = 0; i < s_len; ++i) rel.source.push_back(static_cast<int>(s_off + i));
    for (std::size_t j = 0; j < t_len; ++j) rel.target.push_back(static_cast<int>(t_off + j));
    out.correspondence = Correspondence(out.source_points.size(), out.target_points.size(), std::move(pairs), rel);
    return out;
}

}  // namespace ripscover
