#pragma once

// Field-generic chain and persistence machinery. F is Rational or Mod2.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ripscover/error.hpp"
#include "ripscover/field.hpp"
#include "ripscover/rips.hpp"
#include "ripscover/sparse.hpp"

namespace ripscover {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Chain over simplices of one complex; terms indexed by simplex id.
template <class F>
struct BasicChain {
    ComplexPtr complex;
    int degree = 0;
    SparseVec<F> terms;

    bool is_zero() const { return terms.empty(); }
};

using Chain = BasicChain<Rational>;

template <class F>
BasicChain<F> make_chain(ComplexPtr k, int p, const std::vector<std::pair<std::vector<int>, F>>& terms) {
    BasicChain<F> out{k, p, {}};
    for (const auto& [verts, c] : terms) {
        std::vector<int> v = verts;
        std::sort(v.begin(), v.end());
        auto id = k->find(v);
        if (!id || k->dim(*id) != p) throw SimplexMissing("chain term is not a simplex of the complex");
        out.terms.emplace_back(*id, c);
    }
    normalize(out.terms);
    return out;
}

template <class F>
Rational l1_norm(const BasicChain<F>& z) {
    Rational s = 0;
    for (const auto& [id, c] : z.terms) s += abs(to_rational(c));
    return s;
}

template <class F>
SparseVec<F> boundary_vector(const FilteredComplex& k, std::size_t id, bool relative) {
    SparseVec<F> col;
    for (const auto& f : k.boundary(id)) {
        if (relative && k.fence(f.id)) continue;
        col.emplace_back(f.id, F(static_cast<long>(f.sign)));
    }
    std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return col;
}

template <class F>
BasicChain<F> boundary_of(const BasicChain<F>& z, bool relative) {
    BasicChain<F> out{z.complex, z.degree - 1, {}};
    if (z.degree == 0) return out;
    for (const auto& [id, c] : z.terms)
        for (const auto& f : z.complex->boundary(id)) {
            if (relative && z.complex->fence(f.id)) continue;
            out.terms.emplace_back(f.id, c * F(static_cast<long>(f.sign)));
        }
    normalize(out.terms);
    return out;
}

/// Columns indexed by p-simplices (non-fence ones in relative mode) up to value
/// `up_to`; rows are (p-1)-simplex ids.
template <class F>
struct SparseMatrix {
    std::vector<std::size_t> columns;  // simplex ids
    std::vector<SparseVec<F>> entries;
};

template <class F>
SparseMatrix<F> boundary_matrix(const FilteredComplex& k, int p, bool relative, double up_to = kInf) {
    if (p < 1) throw InvalidArgument("boundary matrix needs p >= 1");
    SparseMatrix<F> m;
    const std::size_t end = up_to == kInf ? k.size() : k.slice_end(up_to);
    for (std::size_t id : k.of_dim(p)) {
        if (id >= end) break;
        if (relative && k.fence(id)) continue;
        m.columns.push_back(id);
        m.entries.push_back(boundary_vector<F>(k, id, relative));
    }
    return m;
}

template <class F>
struct Interval {
    double birth = 0.0;
    double death = kInf;
    std::size_t birth_simplex = 0;
    std::optional<std::size_t> death_simplex;
    BasicChain<F> representative;

    bool alive_at(double a) const { return birth <= a && a < death; }
};

template <class F>
struct Barcode {
    int degree = 0;
    bool relative = false;
    double up_to = kInf;
    std::vector<Interval<F>> intervals;
};

/// Column reduction of the filtration (truncated at `up_to`) with clearing.
/// Finite bars carry the reduced boundary column of the killing simplex as
/// representative, essential bars the reduction-matrix column of the creator.
template <class F>
Barcode<F> persistence(const ComplexPtr& kp, int p, bool relative, double up_to = kInf) {
    const FilteredComplex& k = *kp;
    if (p < 0 || p > k.max_dim() - 1) throw InvalidArgument("degree must be at most max_dim - 1");
    const std::size_t end = up_to == kInf ? k.size() : k.slice_end(up_to);
    auto keep = [&](std::size_t id) { return id < end && !(relative && k.fence(id)); };

    Barcode<F> bc;
    bc.degree = p;
    bc.relative = relative;
    bc.up_to = up_to;

    // degree p+1 columns kill p-classes
    std::unordered_map<std::size_t, std::size_t> pivot1;
    std::vector<SparseVec<F>> r1;
    std::vector<std::size_t> killer;
    for (std::size_t tau : k.of_dim(p + 1)) {
        if (!keep(tau)) continue;
        SparseVec<F> col = boundary_vector<F>(k, tau, relative);
        while (!col.empty()) {
            auto it = pivot1.find(col.back().first);
            if (it == pivot1.end()) break;
            const SparseVec<F>& piv = r1[it->second];
            F c = col.back().second / piv.back().second;
            sub_scaled(col, c, piv);
        }
        if (col.empty()) continue;
        pivot1.emplace(col.back().first, r1.size());
        r1.push_back(std::move(col));
        killer.push_back(tau);
    }

    // degree p columns: positive simplices create classes
    std::unordered_map<std::size_t, std::size_t> pivot0;
    std::vector<SparseVec<F>> r0;
    std::vector<SparseVec<F>> v0;
    for (std::size_t sigma : k.of_dim(p)) {
        if (!keep(sigma)) continue;
        if (pivot1.count(sigma)) continue;  // cleared: paired as a birth
        SparseVec<F> v{{sigma, F(1)}};
        SparseVec<F> col;
        if (p > 0) col = boundary_vector<F>(k, sigma, relative);
        while (!col.empty()) {
            auto it = pivot0.find(col.back().first);
            if (it == pivot0.end()) break;
            F c = col.back().second / r0[it->second].back().second;
            sub_scaled(col, c, r0[it->second]);
            sub_scaled(v, c, v0[it->second]);
        }
        if (!col.empty()) {
            pivot0.emplace(col.back().first, r0.size());
            r0.push_back(std::move(col));
            v0.push_back(std::move(v));
            continue;
        }
        Interval<F> iv;
        iv.birth = k.value(sigma);
        iv.birth_simplex = sigma;
        iv.representative = BasicChain<F>{kp, p, std::move(v)};
        bc.intervals.push_back(std::move(iv));
    }
    for (const auto& [low, idx] : pivot1) {
        const double b = k.value(low);
        const double d = k.value(killer[idx]);
        if (!(b < d)) continue;
        Interval<F> iv;
        iv.birth = b;
        iv.death = d;
        iv.birth_simplex = low;
        iv.death_simplex = killer[idx];
        iv.representative = BasicChain<F>{kp, p, r1[idx]};
        bc.intervals.push_back(std::move(iv));
    }
    std::sort(bc.intervals.begin(), bc.intervals.end(), [](const Interval<F>& a, const Interval<F>& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        if (a.death != b.death) return a.death < b.death;
        return a.birth_simplex < b.birth_simplex;
    });
    return bc;
}

/// Number of bars with birth <= s and death > w.
template <class F>
std::size_t barcode_rank(const Barcode<F>& bc, double s, double w) {
    std::size_t r = 0;
    for (const auto& iv : bc.intervals)
        if (iv.birth <= s && iv.death > w) ++r;
    return r;
}

/// Echelon basis with coordinate tags. Vectors are reduced by their largest
/// index; tags track the combination of tagged inputs each pivot represents.
template <class F>
class Echelon {
public:
    explicit Echelon(std::size_t tags = 0) : tags_(tags) {}

    /// Returns true when v is independent of what is already stored.
    bool insert(SparseVec<F> v, std::vector<F> tag = {}) {
        if (tag.empty()) tag.assign(tags_, F(0));
        reduce(v, tag);
        if (v.empty()) return false;
        by_low_.emplace(v.back().first, vecs_.size());
        vecs_.push_back(std::move(v));
        tags_of_.push_back(std::move(tag));
        return true;
    }

    /// Leaves the remainder in v; tag accumulates minus the coordinates used.
    void reduce(SparseVec<F>& v, std::vector<F>& tag) const {
        while (!v.empty()) {
            auto it = by_low_.find(v.back().first);
            if (it == by_low_.end()) return;
            const SparseVec<F>& piv = vecs_[it->second];
            F c = v.back().second / piv.back().second;
            sub_scaled(v, c, piv);
            const auto& t = tags_of_[it->second];
            for (std::size_t i = 0; i < tags_; ++i)
                if (!ripscover::is_zero(t[i])) tag[i] -= c * t[i];
        }
    }

    bool contains(SparseVec<F> v) const {
        std::vector<F> tag(tags_, F(0));
        reduce(v, tag);
        return v.empty();
    }

    std::size_t rank() const { return vecs_.size(); }
    std::size_t tag_count() const { return tags_; }

private:
    std::size_t tags_;
    std::unordered_map<std::size_t, std::size_t> by_low_;
    std::vector<SparseVec<F>> vecs_;
    std::vector<std::vector<F>> tags_of_;
};

/// H_p of one slice, with the basis given by the bars alive at the parameter.
template <class F>
class SliceHomology {
public:
    SliceHomology(const ComplexPtr& k, const Barcode<F>& bc, double a) : k_(k), a_(a), ech_(0) {
        for (const auto& iv : bc.intervals)
            if (iv.alive_at(a)) basis_.push_back(iv.representative);
        ech_ = Echelon<F>(basis_.size());
        const std::size_t end = k->slice_end(a);
        for (std::size_t id : k->of_dim(bc.degree + 1)) {
            if (id >= end) break;
            if (bc.relative && k->fence(id)) continue;
            ech_.insert(boundary_vector<F>(*k, id, bc.relative));
        }
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            std::vector<F> tag(basis_.size(), F(0));
            tag[i] = F(1);
            if (!ech_.insert(basis_[i].terms, tag))
                throw NumericalFailure("bar representatives are dependent modulo boundaries");
        }
    }

    std::size_t dim() const { return basis_.size(); }
    const std::vector<BasicChain<F>>& basis() const { return basis_; }
    double parameter() const { return a_; }

    /// Coordinates of the class of a cycle of this slice. Throws NotACycle when
    /// the chain is not in the span of the basis and the boundaries.
    std::vector<F> coordinates(const SparseVec<F>& z) const {
        SparseVec<F> v = z;
        std::vector<F> tag(basis_.size(), F(0));
        ech_.reduce(v, tag);
        if (!v.empty()) throw NotACycle();
        for (auto& t : tag) t = -t;
        return tag;
    }

private:
    ComplexPtr k_;
    double a_;
    std::vector<BasicChain<F>> basis_;
    Echelon<F> ech_;
};

template <class F>
struct InducedMap {
    bool nonzero = false;
    std::size_t rank = 0;
    std::optional<BasicChain<F>> witness;
    std::optional<Interval<F>> bar;
};

/// H_p(slice s) -> H_p(slice w) from the barcode of the whole complex. Witness:
/// the qualifying bar with the latest death, ties by earliest birth.
template <class F>
InducedMap<F> induced_map_nonzero(const ComplexPtr& k, int p, double s, double w, bool relative) {
    if (s > w) throw InvalidArgument("induced map needs s <= w");
    if (w > k->cutoff()) throw PreconditionViolated("w exceeds the complex cutoff");
    InducedMap<F> out;
    if (s < 0 && p > 0) return out;
    const Barcode<F> bc = persistence<F>(k, p, relative);
    const Interval<F>* best = nullptr;
    for (const auto& iv : bc.intervals) {
        if (!(iv.birth <= s && iv.death > w)) continue;
        ++out.rank;
        if (!best || iv.death > best->death || (iv.death == best->death && iv.birth < best->birth)) best = &iv;
    }
    out.nonzero = out.rank > 0;
    if (best) {
        out.witness = best->representative;
        out.bar = *best;
    }
    return out;
}

/// Pushes a chain through a vertex map into `target`; degenerate images vanish,
/// fence images vanish in relative mode. Throws SimplexMissing.
template <class F>
BasicChain<F> push_chain(const BasicChain<F>& z, std::span<const int> vertex_map, const ComplexPtr& target,
                         bool relative) {
    BasicChain<F> out{target, z.degree, {}};
    for (const auto& [id, c] : z.terms) {
        auto m = map_simplex(z.complex->vertices(id), vertex_map);
        if (!m) continue;
        auto tid = target->find(m->vertices);
        if (!tid) throw SimplexMissing("image simplex is not in the target complex");
        if (relative && target->fence(*tid)) continue;
        out.terms.emplace_back(*tid, m->sign > 0 ? F(c) : F(-c));
    }
    normalize(out.terms);
    return out;
}

/// True when z lies in the span of (p+1)-boundaries of the slice at a (plus
/// fence chains in relative mode).
template <class F>
bool is_boundary(const BasicChain<F>& z, double a, bool relative) {
    Echelon<F> ech;
    const auto& k = *z.complex;
    const std::size_t end = k.slice_end(a);
    for (std::size_t id : k.of_dim(z.degree + 1)) {
        if (id >= end) break;
        if (relative && k.fence(id)) continue;
        ech.insert(boundary_vector<F>(k, id, relative));
    }
    SparseVec<F> v;
    for (const auto& t : z.terms)
        if (!(relative && k.fence(t.first))) v.push_back(t);
    return ech.contains(v);
}

/// Persistence data of one complex with slice homologies cached by parameter.
template <class F>
class HomologyCache {
public:
    HomologyCache(ComplexPtr k, int p, bool relative)
        : k_(std::move(k)), bc_(persistence<F>(k_, p, relative)) {}

    const ComplexPtr& complex() const { return k_; }
    const Barcode<F>& barcode() const { return bc_; }
    bool relative() const { return bc_.relative; }

    const SliceHomology<F>& at(double a) {
        if (a > k_->cutoff()) throw PreconditionViolated("parameter exceeds the complex cutoff");
        auto it = slices_.find(a);
        if (it == slices_.end()) it = slices_.emplace(a, std::make_unique<SliceHomology<F>>(k_, bc_, a)).first;
        return *it->second;
    }

private:
    ComplexPtr k_;
    Barcode<F> bc_;
    std::map<double, std::unique_ptr<SliceHomology<F>>> slices_;
};

/// Matrix of H_p(S_a) -> H_p(T_b) induced by the vertex map f; columns index
/// the basis at a, rows the basis at b.
template <class F>
Matrix<F> map_matrix(HomologyCache<F>& s, HomologyCache<F>& t, std::span<const int> f, double a, double b) {
    const auto& hs = s.at(a);
    const auto& ht = t.at(b);
    Matrix<F> m(ht.dim(), hs.dim());
    for (std::size_t j = 0; j < hs.dim(); ++j) {
        const BasicChain<F> img = push_chain(hs.basis()[j], f, t.complex(), t.relative());
        for (const auto& term : img.terms)
            if (term.first >= t.complex()->slice_end(b))
                throw NotSimplicial("image simplex lies beyond the target parameter");
        const auto coords = ht.coordinates(img.terms);
        for (std::size_t i = 0; i < ht.dim(); ++i) m(i, j) = coords[i];
    }
    return m;
}

/// Parameter nudged up by a relative 1e-12 so that inequalities met with
/// equality in exact arithmetic survive rounding.
inline double nudge(double a) { return a + 1e-12 * (1.0 + std::abs(a)); }

/// H_p(S_a) -> H_p(T_{a+eps}) for a vertex map subordinate to an
/// eps-simplicial correspondence. Throws NotSimplicial.
template <class F>
Matrix<F> induced_map_of_subordinate(std::span<const int> f, const ComplexPtr& s, const ComplexPtr& t, int p,
                                     double eps, double a, bool relative) {
    auto chk = check_map_simplicial(f, *s, *t, eps);
    if (!chk.ok) throw NotSimplicial("vertex map is not eps-simplicial at simplex " +
                                     std::to_string(*chk.failing_simplex));
    HomologyCache<F> hs(s, p, relative);
    HomologyCache<F> ht(t, p, relative);
    return map_matrix(hs, ht, f, nudge(a), nudge(a + eps));
}

/// Induced maps of a degree-eps homomorphism at sampled parameters.
template <class F>
struct DegreeEpsHom {
    double eps = 0.0;
    std::vector<double> params;
    std::vector<Matrix<F>> maps;
};

struct InterleavingCheck {
    bool ok = true;
    int diagram = 0;  // 1..4
    double a = 0.0;
    double b = 0.0;
    std::string detail;
};

/// Subordinate map of C: each source index goes to its smallest related target.
inline std::vector<int> subordinate_map(const Correspondence& c) {
    std::vector<int> f(c.source_size());
    for (std::size_t x = 0; x < f.size(); ++x) f[x] = c.targets_of(static_cast<int>(x)).front();
    return f;
}

/// Verifies the four interleaving diagrams for Phi = H(C) and Psi = H(C^T) at
/// every pair a <= b of sampled parameters. The complexes need cutoff at least
/// max(params) + 2 eps.
template <class F>
InterleavingCheck check_interleaving(const ComplexPtr& s, const ComplexPtr& t, const Correspondence& c, double eps,
                                     int p, std::vector<double> params, bool relative) {
    const std::vector<int> f = subordinate_map(c);
    const std::vector<int> g = subordinate_map(transpose(c));
    if (!check_map_simplicial(f, *s, *t, eps).ok) throw NotSimplicial("subordinate map of C is not eps-simplicial");
    if (!check_map_simplicial(g, *t, *s, eps).ok) throw NotSimplicial("subordinate map of C^T is not eps-simplicial");
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());

    HomologyCache<F> hs(s, p, relative);
    HomologyCache<F> ht(t, p, relative);
    std::vector<int> id_s(s->vertex_count());
    std::vector<int> id_t(t->vertex_count());
    for (std::size_t i = 0; i < id_s.size(); ++i) id_s[i] = static_cast<int>(i);
    for (std::size_t i = 0; i < id_t.size(); ++i) id_t[i] = static_cast<int>(i);

    auto phi = [&](double a) { return map_matrix(hs, ht, f, nudge(a), nudge(a + eps)); };
    auto psi = [&](double a) { return map_matrix(ht, hs, g, nudge(a), nudge(a + eps)); };
    auto us = [&](double a, double b) { return map_matrix(hs, hs, id_s, nudge(a), nudge(b)); };
    auto ut = [&](double a, double b) { return map_matrix(ht, ht, id_t, nudge(a), nudge(b)); };

    for (std::size_t i = 0; i < params.size(); ++i) {
        const double a = params[i];
        if (!(psi(a + eps) * phi(a) == us(a, (a + eps) + eps)))
            return {false, 3, a, a, "Psi o Phi != 1^{2eps} on the source"};
        if (!(phi(a + eps) * psi(a) == ut(a, (a + eps) + eps)))
            return {false, 4, a, a, "Phi o Psi != 1^{2eps} on the target"};
        for (std::size_t j = i; j < params.size(); ++j) {
            const double b = params[j];
            if (!(phi(b) * us(a, b) == ut(a + eps, b + eps) * phi(a)))
                return {false, 1, a, b, "Phi is not natural"};
            if (!(psi(b) * ut(a, b) == us(a + eps, b + eps) * psi(a)))
                return {false, 2, a, b, "Psi is not natural"};
        }
    }
    return {};
}

template <class F>
DegreeEpsHom<F> degree_eps_hom(std::span<const int> f, const ComplexPtr& s, const ComplexPtr& t, int p, double eps,
                               std::vector<double> params, bool relative) {
    if (!check_map_simplicial(f, *s, *t, eps).ok) throw NotSimplicial("vertex map is not eps-simplicial");
    HomologyCache<F> hs(s, p, relative);
    HomologyCache<F> ht(t, p, relative);
    DegreeEpsHom<F> out;
    out.eps = eps;
    out.params = std::move(params);
    for (double a : out.params) out.maps.push_back(map_matrix(hs, ht, f, nudge(a), nudge(a + eps)));
    return out;
}

/// Result of the two-slice computation of H_p(R(X,A;s)) -> H_p(R(X,A;w)).
template <class F>
struct SlicedInducedMap {
    bool nonzero = false;
    std::size_t rank = 0;
    std::optional<BasicChain<F>> witness;
    std::optional<Interval<F>> bar;
    Barcode<F> barcode_at_s;  // of the filtration truncated at s
    ComplexPtr complex_s;
    std::size_t collapsed_vertices = 0;
};

/// Images of cycles of the s-slice in H_p of the w-slice. The w-slice is
/// replaced by its strong collapse (a homotopy equivalence of pairs), so only
/// the collapsed flag complex is ever built at w.
template <class F>
class WSliceModel {
public:
    WSliceModel(const FiniteMetric& d, const std::vector<bool>& fence, int p, double w) : p_(p) {
        const StrongCollapse sc = strong_collapse(d, fence, w);
        kept_ = sc.kept;
        std::vector<int> local(d.size(), -1);
        for (std::size_t i = 0; i < kept_.size(); ++i) local[static_cast<std::size_t>(kept_[i])] = static_cast<int>(i);
        map_.resize(d.size());
        for (std::size_t v = 0; v < d.size(); ++v) map_[v] = local[static_cast<std::size_t>(sc.retraction[v])];
        std::vector<int> fence_local;
        for (std::size_t i = 0; i < kept_.size(); ++i)
            if (fence[static_cast<std::size_t>(kept_[i])]) fence_local.push_back(static_cast<int>(i));
        const FiniteMetric dk = d.restrict_to(kept_);
        k_ = build_filtered_rips(dk, fence_local, p + 1, std::max(w, 1e-300));
        for (std::size_t id : k_->of_dim(p + 1)) {
            if (k_->fence(id)) continue;
            ech_.insert(boundary_vector<F>(*k_, id, true));
        }
    }

    /// Image of a relative cycle on the original vertex set.
    BasicChain<F> image(const BasicChain<F>& z) const { return push_chain(z, map_, k_, true); }
    /// Remainder after reducing modulo boundaries and previously accepted images.
    bool accept_if_independent(const BasicChain<F>& z) { return ech_.insert(image(z).terms); }
    bool is_zero_class(const BasicChain<F>& z) const { return ech_.contains(image(z).terms); }
    std::size_t vertex_count() const { return kept_.size(); }
    const ComplexPtr& complex() const { return k_; }

private:
    int p_;
    std::vector<int> kept_;
    std::vector<int> map_;
    ComplexPtr k_;
    Echelon<F> ech_;
};

template <class F>
SlicedInducedMap<F> sliced_induced_map(const FiniteMetric& d, const std::vector<bool>& fence, int p, double s,
                                       double w) {
    if (s > w) throw InvalidArgument("induced map needs s <= w");
    if (fence.size() != d.size()) throw LengthMismatch(d.size(), fence.size());
    SlicedInducedMap<F> out;
    std::vector<int> fence_idx;
    for (std::size_t i = 0; i < fence.size(); ++i)
        if (fence[i]) fence_idx.push_back(static_cast<int>(i));
    // below zero the slice is the vertex set
    out.complex_s = build_filtered_rips(d, fence_idx, p + 1, std::max(s, 1e-300));
    out.barcode_at_s = persistence<F>(out.complex_s, p, true, s);
    std::vector<const Interval<F>*> alive;
    for (const auto& iv : out.barcode_at_s.intervals)
        if (iv.alive_at(s)) alive.push_back(&iv);
    if (alive.empty()) return out;

    WSliceModel<F> model(d, fence, p, w);
    out.collapsed_vertices = model.vertex_count();
    for (const Interval<F>* iv : alive) {
        if (!model.accept_if_independent(iv->representative)) continue;
        if (out.rank == 0) {
            out.witness = iv->representative;
            out.bar = *iv;
        }
        ++out.rank;
    }
    out.nonzero = out.rank > 0;
    return out;
}

}  // namespace ripscover
