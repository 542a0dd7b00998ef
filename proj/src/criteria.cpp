#include "ripscover/criteria.hpp"

#include <map>

#include "ripscover/error.hpp"
#include "ripscover/metric.hpp"

namespace ripscover {

namespace {

constexpr int kDegree = 2;

template <class F>
void fill(Verdict& v, const SlicedInducedMap<F>& m) {
    v.holds = m.nonzero;
    v.rank = m.rank;
    v.collapsed_vertices = m.collapsed_vertices;
    for (const auto& iv : m.barcode_at_s.intervals) v.bars.emplace_back(iv.birth, iv.death);
    if (m.bar) v.witness_bar = std::make_pair(m.bar->birth, m.bar->death);
}

Verdict checked(const Scenario& s, double a, double b, const std::string& name, const CriteriaOptions& o) {
    AssumptionReport rep = validate_assumptions(s, o.grid_step);
    if (!rep.ok()) throw AssumptionFailure(rep);
    Verdict v = criterion_at(s, a, b, name, o.field);
    v.report = std::move(rep);
    return v;
}

}  // namespace

Verdict criterion_at(const Scenario& s, double a, double b, const std::string& name, FieldKind field) {
    Verdict v;
    v.criterion = name;
    v.degree = kDegree;
    v.s = a;
    v.w = b;
    v.field = field;
    const FiniteMetric d = FiniteMetric::from_points(s.sensors());
    const std::vector<bool> fence = fence_mask(s);
    if (field == FieldKind::Rational) {
        auto m = sliced_induced_map<Rational>(d, fence, kDegree, a, b);
        fill(v, m);
        v.witness = m.witness;
    } else {
        auto m = sliced_induced_map<Mod2>(d, fence, kDegree, a, b);
        fill(v, m);
        v.witness_mod2 = m.witness;
    }
    return v;
}

Verdict dsg_criterion(const Scenario& s, const CriteriaOptions& options) {
    const Radii& r = s.radii();
    return checked(s, r.r_s, r.r_w, "dsg", options);
}

Verdict stable_criterion(const Scenario& s, const CriteriaOptions& options) {
    const Radii& r = s.radii();
    return checked(s, r.r_s - s.epsilon(), r.r_w + s.epsilon(), "stable", options);
}

MergedPoints merge_coincident(const std::vector<Point2>& points) {
    MergedPoints out;
    out.index_of.resize(points.size());
    std::map<std::pair<double, double>, int> seen;
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto [it, fresh] = seen.emplace(std::make_pair(points[i].x, points[i].y), static_cast<int>(out.positions.size()));
        if (fresh) out.positions.push_back(points[i]);
        out.index_of[i] = it->second;
    }
    return out;
}

TransportResult transport_cycle(const Scenario& s, const Chain& z, const Perturbation& p) {
    const PerturbationCheck pc = validate_perturbation(s, p);
    if (!pc.ok) throw InvalidArgument("invalid perturbation: " + pc.detail);
    if (z.complex->vertex_count() != s.size()) throw LengthMismatch(s.size(), z.complex->vertex_count());

    MergedPoints merged = merge_coincident(p.targets);
    std::vector<Point2>& positions = merged.positions;
    std::vector<int>& vertex_of = merged.index_of;
    const std::vector<bool> base_fence = fence_mask(s);
    std::vector<bool> fence(positions.size(), false);
    std::vector<int> fence_idx;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (base_fence[i]) fence[static_cast<std::size_t>(vertex_of[i])] = true;
    for (std::size_t v = 0; v < fence.size(); ++v)
        if (fence[v]) fence_idx.push_back(static_cast<int>(v));

    const Radii& r = s.radii();
    const FiniteMetric d = FiniteMetric::from_points(positions);
    ComplexPtr k = build_filtered_rips(d, fence_idx, kDegree + 1, r.r_s);
    Chain fz = push_chain(z, vertex_of, k, true);
    if (fz.is_zero() || !boundary_of(fz, true).is_zero())
        throw TransportFailure("transported chain is not a nonzero relative cycle");
    WSliceModel<Rational> model(d, fence, kDegree, r.r_w);
    if (model.is_zero_class(fz)) throw TransportFailure("transported cycle vanishes at r_w");

    return TransportResult{s.with_sensors(positions), std::move(k), std::move(fz), std::move(vertex_of),
                           std::move(positions)};
}

}  // namespace ripscover
