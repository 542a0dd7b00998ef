#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ripscover/metric.hpp"

namespace ripscover {

class FilteredComplex;
using ComplexPtr = std::shared_ptr<const FilteredComplex>;

/// Simplices sorted by (filtration value, dimension, lexicographic vertices);
/// a simplex id is its position in that order, so every slice is a prefix.
class FilteredComplex {
public:
    struct Face {
        std::size_t id;
        int sign;
    };

    /// Validates face closure and value monotonicity. `values` may be empty, in
    /// which case every simplex gets value 0.
    static ComplexPtr from_simplices(std::size_t n_vertices, std::vector<std::vector<int>> simplices,
                                     std::vector<double> values, std::vector<bool> fence_vertices,
                                     double cutoff = std::numeric_limits<double>::infinity());

    std::size_t size() const { return dims_.size(); }
    std::size_t vertex_count() const { return n_; }
    int max_dim() const { return max_dim_; }
    double cutoff() const { return cutoff_; }
    const std::vector<bool>& fence_vertices() const { return fence_vertices_; }

    int dim(std::size_t id) const { return dims_[id]; }
    double value(std::size_t id) const { return values_[id]; }
    bool fence(std::size_t id) const { return fence_[id] != 0; }
    std::span<const int> vertices(std::size_t id) const {
        return {verts_.data() + offsets_[id], static_cast<std::size_t>(dims_[id] + 1)};
    }

    /// Ids of dimension d in filtration order.
    const std::vector<std::size_t>& of_dim(int d) const;
    std::optional<std::size_t> find(std::span<const int> sorted_vertices) const;

    /// Number of simplices with value <= a; vertices only for a < 0.
    std::size_t slice_end(double a) const;
    bool in_slice(std::size_t id, double a) const { return id < slice_end(a); }
    ComplexPtr slice(double a) const;

    /// Codimension-one faces with the alternating signs of the oriented boundary.
    std::vector<Face> boundary(std::size_t id) const;

    /// "dim,filtration,fence,v0,v1,..." per simplex.
    void write_csv(std::ostream& os) const;

private:
    FilteredComplex() = default;
    static ComplexPtr build(std::size_t n, int max_dim, double cutoff, std::vector<bool> fence_vertices,
                            std::vector<std::vector<int>> simplices, std::vector<double> values);
    std::uint64_t key(std::span<const int> v) const;

    std::size_t n_ = 0;
    int max_dim_ = 0;
    double cutoff_ = 0.0;
    std::vector<bool> fence_vertices_;
    std::vector<int> dims_;
    std::vector<double> values_;
    std::vector<std::uint8_t> fence_;
    std::vector<std::size_t> offsets_;
    std::vector<int> verts_;
    std::vector<std::vector<std::size_t>> by_dim_;
    std::vector<std::unordered_map<std::uint64_t, std::size_t>> lookup_;

    friend ComplexPtr build_filtered_rips(const FiniteMetric&, std::span<const int>, int, double, std::size_t);
};

inline constexpr std::size_t kDefaultSimplexBudget = 5'000'000;

/// Rips filtration truncated at max_dim and cutoff; fence flags from A.
ComplexPtr build_filtered_rips(const FiniteMetric& d, std::span<const int> fence_subset, int max_dim, double cutoff,
                               std::size_t budget = kDefaultSimplexBudget);

struct RelativeBasis {
    std::vector<std::size_t> basis;  // non-fence p-simplices, filtration order
    std::vector<std::size_t> fence;  // fence p-simplices, filtration order
};

RelativeBasis relative_basis(const FilteredComplex& k, int p);

/// First simplex of S whose correspondence image fails to be a simplex of T
/// at value + eps (or of the fence subcomplex when C is relative).
struct SimplicialCheck {
    bool ok = true;
    std::optional<std::size_t> failing_simplex;  // id in S
    std::vector<int> failing_image;              // vertices of the missing simplex of T
};

SimplicialCheck check_eps_simplicial(const Correspondence& c, const FilteredComplex& s, const FilteredComplex& t,
                                     double eps);

/// Same check for a vertex map f: every f(sigma) must be a simplex of T at
/// value(sigma) + eps, and a fence simplex when sigma is one.
SimplicialCheck check_map_simplicial(std::span<const int> f, const FilteredComplex& s, const FilteredComplex& t,
                                     double eps);

/// Strong collapse of the flag complex at `threshold` by dominated vertices,
/// as a retraction of pairs: a fence vertex is only removed when dominated by
/// another fence vertex. retraction[v] is the surviving image of v.
struct StrongCollapse {
    std::vector<int> kept;
    std::vector<int> retraction;
};

StrongCollapse strong_collapse(const FiniteMetric& d, const std::vector<bool>& fence, double threshold);

/// Image of a vertex tuple under a vertex map: sorted vertices and the sign of
/// the sorting permutation, or nullopt for a degenerate image.
struct MappedSimplex {
    std::vector<int> vertices;
    int sign;
};
std::optional<MappedSimplex> map_simplex(std::span<const int> simplex, std::span<const int> vertex_map);

}  // namespace ripscover
