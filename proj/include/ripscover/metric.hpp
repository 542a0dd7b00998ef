#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ripscover/geometry.hpp"

namespace ripscover {

/// Symmetric distance matrix with zero diagonal. The triangle inequality is
/// checked exhaustively for n <= 64 and on a fixed sample of triples above.
class FiniteMetric {
public:
    FiniteMetric() = default;
    FiniteMetric(std::size_t n, std::vector<double> distances);

    static FiniteMetric from_points(std::span<const Point2> points);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }

    /// Metric on the listed points, in list order.
    FiniteMetric restrict_to(std::span<const int> indices) const;

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

/// Finite relation between index ranges [0, n_source) and [0, n_target) in
/// which every index appears, optionally constrained to a pair of subsets
/// (A, B) with C(A) in B and C^T(B) in A.
class Correspondence {
public:
    using Pair = std::pair<int, int>;

    struct Relative {
        std::vector<int> source;  // A
        std::vector<int> target;  // B
    };

    Correspondence(std::size_t n_source, std::size_t n_target, std::vector<Pair> pairs,
                   std::optional<Relative> relative = std::nullopt);

    static Correspondence identity(std::size_t n, std::optional<std::vector<int>> subset = std::nullopt);

    std::size_t source_size() const { return n_source_; }
    std::size_t target_size() const { return n_target_; }
    const std::vector<Pair>& pairs() const { return pairs_; }
    const std::optional<Relative>& relative() const { return relative_; }

    /// C(sigma): sorted targets related to any element of `sources`.
    std::vector<int> image(std::span<const int> sources) const;
    /// Targets of one source index, sorted.
    std::span<const int> targets_of(int source) const;

    bool contains(int source, int target) const;

private:
    std::size_t n_source_;
    std::size_t n_target_;
    std::vector<Pair> pairs_;  // sorted, unique
    std::optional<Relative> relative_;
    std::vector<std::size_t> offsets_;  // CSR by source
    std::vector<int> targets_;
};

/// max |dX(x,x') - dY(y,y')| over pairs (x,y), (x',y') in C.
double distortion(const Correspondence& c, const FiniteMetric& dx, const FiniteMetric& dy);

/// d_GH(X, Y) <= dis(C)/2; the exact Gromov-Hausdorff distance is not computed.
double gromov_hausdorff_upper_bound(const Correspondence& c, const FiniteMetric& dx, const FiniteMetric& dy);

Correspondence transpose(const Correspondence& c);

/// D o C. Carries a relative constraint when C's target subset equals D's source subset.
Correspondence compose(const Correspondence& c, const Correspondence& d);

/// Graph of an index map f: X -> Y onto [0, n_target) with relative constraint
/// (A, f(A)). Throws CollisionError unless f(A) and f(X - A) are disjoint.
Correspondence graph_correspondence(std::span<const int> f, std::size_t n_target, std::span<const int> subset);

/// Hausdorff distance between two index sets of one metric. Throws EmptySet.
double hausdorff_distance(const FiniteMetric& d, std::span<const int> p, std::span<const int> q);

/// Correspondence of pairs within eps/2 between X1 u X2 and Y1 u Y2 (points of a
/// common metric). Local source indices list X1 then X2; local targets list Y1
/// then Y2. Carries the relative constraint (X_j, Y_j), j in {1, 2}.
struct CollarCorrespondence {
    Correspondence correspondence;
    std::vector<int> source_points;  // local source index -> common index
    std::vector<int> target_points;  // local target index -> common index
};

CollarCorrespondence collar_correspondence(const FiniteMetric& common, std::span<const int> x1,
                                           std::span<const int> x2, std::span<const int> y1,
                                           std::span<const int> y2, double eps, int relative_block = 1);

}  // namespace ripscover
