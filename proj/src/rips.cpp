#include "ripscover/rips.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "ripscover/error.hpp"

namespace ripscover {

namespace {

// C(n, k) for the small k used in simplex keys.
std::uint64_t binom(std::uint64_t n, int k) {
    if (static_cast<std::uint64_t>(k) > n) return 0;
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - static_cast<std::uint64_t>(k) + i) / static_cast<std::uint64_t>(i);
    return r;
}

bool lex_less(std::span<const int> a, std::span<const int> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::uint64_t FilteredComplex::key(std::span<const int> v) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < v.size(); ++i) k += binom(static_cast<std::uint64_t>(v[i]), static_cast<int>(i) + 1);
    return k;
}

ComplexPtr FilteredComplex::build(std::size_t n, int max_dim, double cutoff, std::vector<bool> fence_vertices,
                                  std::vector<std::vector<int>> simplices, std::vector<double> values) {
    auto k = std::shared_ptr<FilteredComplex>(new FilteredComplex());
    k->n_ = n;
    k->max_dim_ = max_dim;
    k->cutoff_ = cutoff;
    k->fence_vertices_ = std::move(fence_vertices);

    std::vector<std::size_t> order(simplices.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (values[a] != values[b]) return values[a] < values[b];
        if (simplices[a].size() != simplices[b].size()) return simplices[a].size() < simplices[b].size();
        return lex_less(simplices[a], simplices[b]);
    });

    const std::size_t m = simplices.size();
    k->dims_.resize(m);
    k->values_.resize(m);
    k->fence_.resize(m);
    k->offsets_.resize(m + 1);
    k->by_dim_.assign(static_cast<std::size_t>(max_dim) + 1, {});
    k->lookup_.assign(static_cast<std::size_t>(max_dim) + 1, {});
    std::size_t off = 0;
    for (std::size_t pos = 0; pos < m; ++pos) {
        const auto& s = simplices[order[pos]];
        const int d = static_cast<int>(s.size()) - 1;
        k->dims_[pos] = d;
        k->values_[pos] = values[order[pos]];
        bool all_fence = true;
        for (int v : s) all_fence = all_fence && k->fence_vertices_[static_cast<std::size_t>(v)];
        k->fence_[pos] = all_fence ? 1 : 0;
        k->offsets_[pos] = off;
        k->verts_.insert(k->verts_.end(), s.begin(), s.end());
        off += s.size();
        k->by_dim_[static_cast<std::size_t>(d)].push_back(pos);
        k->lookup_[static_cast<std::size_t>(d)].emplace(k->key(s), pos);
    }
    k->offsets_[m] = off;
    return k;
}

ComplexPtr FilteredComplex::from_simplices(std::size_t n_vertices, std::vector<std::vector<int>> simplices,
                                           std::vector<double> values, std::vector<bool> fence_vertices,
                                           double cutoff) {
    if (values.empty()) values.assign(simplices.size(), 0.0);
    if (values.size() != simplices.size()) throw LengthMismatch(simplices.size(), values.size());
    if (fence_vertices.empty()) fence_vertices.assign(n_vertices, false);
    if (fence_vertices.size() != n_vertices) throw LengthMismatch(n_vertices, fence_vertices.size());
    int max_dim = 0;
    for (auto& s : simplices) {
        if (s.empty()) throw InvalidArgument("empty simplex");
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InvalidArgument("repeated vertex in simplex");
        for (int v : s)
            if (v < 0 || static_cast<std::size_t>(v) >= n_vertices) throw InvalidArgument("vertex out of range");
        max_dim = std::max(max_dim, static_cast<int>(s.size()) - 1);
    }
    // every vertex is a simplex
    std::vector<bool> have_vertex(n_vertices, false);
    for (const auto& s : simplices)
        if (s.size() == 1) have_vertex[static_cast<std::size_t>(s[0])] = true;
    for (std::size_t v = 0; v < n_vertices; ++v)
        if (!have_vertex[v]) {
            simplices.push_back({static_cast<int>(v)});
            values.push_back(0.0);
        }

    auto k = build(n_vertices, max_dim, cutoff, std::move(fence_vertices), std::move(simplices), std::move(values));
    for (std::size_t d = 0; d < k->by_dim_.size(); ++d)
        if (k->lookup_[d].size() != k->by_dim_[d].size()) throw InvalidArgument("duplicate simplex");
    for (std::size_t id = 0; id < k->size(); ++id) {
        if (k->dim(id) == 0) continue;
        auto v = k->vertices(id);
        std::vector<int> face(v.size() - 1);
        for (std::size_t skip = 0; skip < v.size(); ++skip) {
            std::size_t w = 0;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (i != skip) face[w++] = v[i];
            auto f = k->find(face);
            if (!f) throw InvalidArgument("complex is not closed under faces");
            if (k->value(*f) > k->value(id)) throw InvalidArgument("face has a larger filtration value");
        }
    }
    return k;
}

const std::vector<std::size_t>& FilteredComplex::of_dim(int d) const {
    static const std::vector<std::size_t> kEmpty;
    if (d < 0 || d > max_dim_) return kEmpty;
    return by_dim_[static_cast<std::size_t>(d)];
}

std::optional<std::size_t> FilteredComplex::find(std::span<const int> v) const {
    const int d = static_cast<int>(v.size()) - 1;
    if (d < 0 || d > max_dim_) return std::nullopt;
    const auto& table = lookup_[static_cast<std::size_t>(d)];
    auto it = table.find(key(v));
    if (it == table.end()) return std::nullopt;
    return it->second;
}

std::size_t FilteredComplex::slice_end(double a) const {
    if (a < 0) return n_;
    return static_cast<std::size_t>(std::upper_bound(values_.begin(), values_.end(), a) - values_.begin());
}

ComplexPtr FilteredComplex::slice(double a) const {
    const std::size_t end = slice_end(a);
    std::vector<std::vector<int>> simplices;
    std::vector<double> values;
    simplices.reserve(end);
    for (std::size_t id = 0; id < end; ++id) {
        auto v = vertices(id);
        simplices.emplace_back(v.begin(), v.end());
        values.push_back(values_[id]);
    }
    return build(n_, max_dim_, std::min(a, cutoff_), fence_vertices_, std::move(simplices), std::move(values));
}

std::vector<FilteredComplex::Face> FilteredComplex::boundary(std::size_t id) const {
    std::vector<Face> out;
    auto v = vertices(id);
    if (v.size() <= 1) return out;
    std::vector<int> face(v.size() - 1);
    for (std::size_t skip = 0; skip < v.size(); ++skip) {
        std::size_t w = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (i != skip) face[w++] = v[i];
        auto f = find(face);
        if (!f) throw SimplexMissing("face of simplex " + std::to_string(id) + " is missing");
        out.push_back({*f, (skip % 2 == 0) ? 1 : -1});
    }
    return out;
}

void FilteredComplex::write_csv(std::ostream& os) const {
    os << "dim,filtration,fence";
    for (int i = 0; i <= max_dim_; ++i) os << ",v" << i;
    os << '\n';
    const auto prec = os.precision(17);
    for (std::size_t id = 0; id < size(); ++id) {
        os << dims_[id] << ',' << values_[id] << ',' << (fence(id) ? 1 : 0);
        for (int v : vertices(id)) os << ',' << v;
        os << '\n';
    }
    os.precision(prec);
}

ComplexPtr build_filtered_rips(const FiniteMetric& d, std::span<const int> fence_subset, int max_dim, double cutoff,
                               std::size_t budget) {
    if (max_dim < 1) throw InvalidArgument("max_dim must be at least 1");
    if (!(cutoff > 0)) throw InvalidArgument("cutoff must be positive");
    const std::size_t n = d.size();
    std::vector<bool> fence(n, false);
    for (int a : fence_subset) {
        if (a < 0 || static_cast<std::size_t>(a) >= n) throw InvalidArgument("fence index out of range");
        fence[static_cast<std::size_t>(a)] = true;
    }

    // lower neighbors: u < v with d(u, v) <= cutoff
    std::vector<std::vector<int>> upper(n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (d(u, v) <= cutoff) upper[u].push_back(static_cast<int>(v));

    std::vector<std::vector<int>> simplices;
    std::vector<double> values;
    auto emit = [&](const std::vector<int>& s, double val) {
        if (simplices.size() >= budget) throw CombinatorialBlowup(budget);
        simplices.push_back(s);
        values.push_back(val);
    };

    std::vector<int> current;
    // depth-first expansion over increasing vertex order; `cands` are common upper neighbors
    auto expand = [&](auto&& self, std::vector<int>& cands, double val) -> void {
        emit(current, val);
        if (static_cast<int>(current.size()) - 1 == max_dim) return;
        for (std::size_t ci = 0; ci < cands.size(); ++ci) {
            const int v = cands[ci];
            double nv = val;
            for (int u : current) nv = std::max(nv, d(static_cast<std::size_t>(u), static_cast<std::size_t>(v)));
            std::vector<int> next;
            const auto& up = upper[static_cast<std::size_t>(v)];
            std::set_intersection(cands.begin() + static_cast<std::ptrdiff_t>(ci) + 1, cands.end(), up.begin(),
                                  up.end(), std::back_inserter(next));
            current.push_back(v);
            self(self, next, nv);
            current.pop_back();
        }
    };
    for (std::size_t v = 0; v < n; ++v) {
        current = {static_cast<int>(v)};
        std::vector<int> cands = upper[v];
        expand(expand, cands, 0.0);
    }

    auto k = FilteredComplex::build(n, max_dim, cutoff, std::move(fence), std::move(simplices), std::move(values));
    return k;
}

RelativeBasis relative_basis(const FilteredComplex& k, int p) {
    if (p < 0 || p > k.max_dim()) throw InvalidArgument("degree out of range");
    RelativeBasis out;
    for (std::size_t id : k.of_dim(p)) (k.fence(id) ? out.fence : out.basis).push_back(id);
    return out;
}

namespace {

double slack(double v) { return v + 1e-12 * (1.0 + std::abs(v)); }

// Calls fn on every subset of `items` of size 1..max_size; stops when fn returns false.
template <class Fn>
bool for_each_subset(const std::vector<int>& items, int max_size, Fn&& fn) {
    std::vector<int> pick;
    auto rec = [&](auto&& self, std::size_t start) -> bool {
        if (!pick.empty() && !fn(pick)) return false;
        if (static_cast<int>(pick.size()) == max_size) return true;
        for (std::size_t i = start; i < items.size(); ++i) {
            pick.push_back(items[i]);
            if (!self(self, i + 1)) return false;
            pick.pop_back();
        }
        return true;
    };
    return rec(rec, 0);
}

}  // namespace

SimplicialCheck check_eps_simplicial(const Correspondence& c, const FilteredComplex& s, const FilteredComplex& t,
                                     double eps) {
    if (c.source_size() != s.vertex_count() || c.target_size() != t.vertex_count())
        throw InvalidArgument("correspondence does not match the complexes");
    SimplicialCheck out;
    for (std::size_t id = 0; id < s.size(); ++id) {
        const double bound = slack(s.value(id) + eps);
        const std::vector<int> image = c.image(s.vertices(id));
        const bool need_fence = c.relative().has_value() && s.fence(id);
        std::vector<int> bad;
        for_each_subset(image, t.max_dim() + 1, [&](const std::vector<int>& sub) {
            auto f = t.find(sub);
            if (!f || t.value(*f) > bound || (need_fence && !t.fence(*f))) {
                bad = sub;
                return false;
            }
            return true;
        });
        if (!bad.empty()) {
            out.ok = false;
            out.failing_simplex = id;
            out.failing_image = std::move(bad);
            return out;
        }
    }
    return out;
}

SimplicialCheck check_map_simplicial(std::span<const int> f, const FilteredComplex& s, const FilteredComplex& t,
                                     double eps) {
    if (f.size() != s.vertex_count()) throw LengthMismatch(s.vertex_count(), f.size());
    for (int y : f)
        if (y < 0 || static_cast<std::size_t>(y) >= t.vertex_count()) throw InvalidArgument("map value out of range");
    SimplicialCheck out;
    for (std::size_t id = 0; id < s.size(); ++id) {
        std::vector<int> image;
        for (int v : s.vertices(id)) image.push_back(f[static_cast<std::size_t>(v)]);
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        auto found = t.find(image);
        if (!found || t.value(*found) > slack(s.value(id) + eps) || (s.fence(id) && !t.fence(*found))) {
            out.ok = false;
            out.failing_simplex = id;
            out.failing_image = std::move(image);
            return out;
        }
    }
    return out;
}

StrongCollapse strong_collapse(const FiniteMetric& d, const std::vector<bool>& fence, double threshold) {
    const std::size_t n = d.size();
    if (fence.size() != n) throw LengthMismatch(n, fence.size());
    const std::size_t words = (n + 63) / 64;
    std::vector<std::uint64_t> nbr(n * words, 0);
    auto row = [&](std::size_t v) { return nbr.data() + v * words; };
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v)
            if (u == v || d(u, v) <= threshold) row(u)[v / 64] |= std::uint64_t{1} << (v % 64);

    std::vector<std::uint64_t> alive(words, 0);
    for (std::size_t v = 0; v < n; ++v) alive[v / 64] |= std::uint64_t{1} << (v % 64);
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);

    auto dominated_by = [&](std::size_t v, std::size_t u) {
        const auto* nv = row(v);
        const auto* nu = row(u);
        for (std::size_t w = 0; w < words; ++w)
            if ((nv[w] & alive[w]) & ~nu[w]) return false;
        return true;
    };
    auto is_alive = [&](std::size_t v) { return (alive[v / 64] >> (v % 64)) & 1u; };

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t v = 0; v < n; ++v) {
            if (!is_alive(v)) continue;
            for (std::size_t u = 0; u < n; ++u) {
                if (u == v || !is_alive(u) || !((row(v)[u / 64] >> (u % 64)) & 1u)) continue;
                if (fence[v] && !fence[u]) continue;
                if (!dominated_by(v, u)) continue;
                alive[v / 64] &= ~(std::uint64_t{1} << (v % 64));
                parent[v] = static_cast<int>(u);
                changed = true;
                break;
            }
        }
    }

    StrongCollapse out;
    out.retraction.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        int r = static_cast<int>(v);
        while (parent[static_cast<std::size_t>(r)] != r) r = parent[static_cast<std::size_t>(r)];
        out.retraction[v] = r;
        if (is_alive(v)) out.kept.push_back(static_cast<int>(v));
    }
    return out;
}

std::optional<MappedSimplex> map_simplex(std::span<const int> simplex, std::span<const int> vertex_map) {
    MappedSimplex out;
    out.vertices.reserve(simplex.size());
    for (int v : simplex) out.vertices.push_back(vertex_map[static_cast<std::size_t>(v)]);
    // insertion sort counting transpositions
    int swaps = 0;
    for (std::size_t i = 1; i < out.vertices.size(); ++i)
        for (std::size_t j = i; j > 0 && out.vertices[j - 1] > out.vertices[j]; --j) {
            std::swap(out.vertices[j - 1], out.vertices[j]);
            ++swaps;
        }
    if (std::adjacent_find(out.vertices.begin(), out.vertices.end()) != out.vertices.end()) return std::nullopt;
    out.sign = (swaps % 2 == 0) ? 1 : -1;
    return out;
}

}  // namespace ripscover
