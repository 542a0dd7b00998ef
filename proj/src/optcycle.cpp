#include "ripscover/optcycle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "ripscover/error.hpp"

namespace ripscover {

Rational nearest_fraction(double v, long max_den) {
    if (!std::isfinite(v)) throw NumericalFailure("non-finite LP value");
    const bool neg = v < 0;
    double x = std::abs(v);
    // continued fraction convergents
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double frac = x;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(frac);
        if (a > 1e15) break;
        const long ai = static_cast<long>(a);
        const long h2 = ai * h1 + h0;
        const long k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        const double rem = frac - a;
        if (rem < 1e-15 || std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) < 1e-15 * (1 + x)) break;
        frac = 1.0 / rem;
    }
    Rational r(h1, k1 == 0 ? 1 : k1);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

L1Problem l1_problem(const Chain& x, bool relative) {
    const FilteredComplex& k = *x.complex;
    const int p = x.degree;
    L1Problem pr;
    std::vector<std::size_t> rest;
    for (std::size_t id : k.of_dim(p)) (relative && k.fence(id) ? pr.row_simplices : rest).push_back(id);
    pr.s = pr.row_simplices.size();
    pr.row_simplices.insert(pr.row_simplices.end(), rest.begin(), rest.end());
    rest.clear();
    for (std::size_t id : k.of_dim(p + 1)) (relative && k.fence(id) ? pr.col_simplices : rest).push_back(id);
    pr.t = pr.col_simplices.size();
    pr.col_simplices.insert(pr.col_simplices.end(), rest.begin(), rest.end());
    pr.m = pr.row_simplices.size();
    pr.n = pr.col_simplices.size();
    pr.x.assign(pr.m, Rational(0));
    std::unordered_map<std::size_t, std::size_t> row_of;
    for (std::size_t i = 0; i < pr.m; ++i) row_of.emplace(pr.row_simplices[i], i);
    for (const auto& [id, c] : x.terms) pr.x[row_of.at(id)] = c;
    return pr;
}

namespace {

// Column-reduced boundary matrix: columns with distinct lowest rows spanning im B.
struct ReducedBoundary {
    std::vector<SparseVec<Rational>> cols;
    std::unordered_map<std::size_t, std::size_t> by_low;

    bool reduces_to_zero(SparseVec<Rational> v) const {
        while (!v.empty()) {
            auto it = by_low.find(v.back().first);
            if (it == by_low.end()) return false;
            const auto& piv = cols[it->second];
            Rational c = v.back().second / piv.back().second;
            sub_scaled(v, c, piv);
        }
        return true;
    }
};

ReducedBoundary reduce_boundary(const FilteredComplex& k, int p, bool relative) {
    ReducedBoundary rb;
    for (std::size_t id : k.of_dim(p + 1)) {
        if (relative && k.fence(id)) continue;
        SparseVec<Rational> col = boundary_vector<Rational>(k, id, relative);
        while (!col.empty()) {
            auto it = rb.by_low.find(col.back().first);
            if (it == rb.by_low.end()) break;
            const auto& piv = rb.cols[it->second];
            Rational c = col.back().second / piv.back().second;
            sub_scaled(col, c, piv);
        }
        if (col.empty()) continue;
        rb.by_low.emplace(col.back().first, rb.cols.size());
        rb.cols.push_back(std::move(col));
    }
    return rb;
}

SparseVec<Rational> relative_terms(const Chain& z, bool relative) {
    SparseVec<Rational> v;
    for (const auto& t : z.terms)
        if (!(relative && z.complex->fence(t.first))) v.push_back(t);
    return v;
}

L1Result solve_l1(const Chain& z_in, bool relative, const L1Options& opt) {
    const FilteredComplex& k = *z_in.complex;
    const int p = z_in.degree;
    if (p < 0 || p > k.max_dim()) throw InvalidArgument("chain degree exceeds the complex dimension");
    Chain z{z_in.complex, p, relative_terms(z_in, relative)};
    for (const auto& t : z.terms)
        if (k.dim(t.first) != p) throw InvalidArgument("chain term has the wrong dimension");
    if (!boundary_of(z, relative).is_zero()) {
        if (relative) throw NotARelativeCycle();
        throw NotACycle();
    }

    const ReducedBoundary rb = reduce_boundary(k, p, relative);
    L1Result res;
    res.input_norm = l1_norm(z);

    // d = x - z lies in im B  iff  d_N = M d_L with M = R_N R_L^{-1}
    std::vector<std::size_t> order(rb.cols.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return rb.cols[a].back().first < rb.cols[b].back().first; });
    std::unordered_map<std::size_t, std::size_t> l_index;  // low simplex -> position in L
    std::vector<std::size_t> lows;
    for (std::size_t c : order) {
        l_index.emplace(rb.cols[c].back().first, lows.size());
        lows.push_back(rb.cols[c].back().first);
    }
    // entries of R at non-low rows, grouped by row
    std::map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> n_rows;  // row -> (L position, R value)
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        for (const auto& [row, v] : rb.cols[order[pos]])
            if (!l_index.count(row)) n_rows[row].emplace_back(pos, v);

    std::unordered_map<std::size_t, Rational> zval;
    for (const auto& [id, c] : z.terms) zval.emplace(id, c);
    auto zat = [&](std::size_t id) {
        auto it = zval.find(id);
        return it == zval.end() ? Rational(0) : it->second;
    };

    struct Row {
        std::size_t simplex;
        std::vector<std::pair<std::size_t, Rational>> m;  // (L position, M entry)
        Rational b;
    };
    std::vector<Row> rows;
    std::vector<Rational> mrow(lows.size());
    std::vector<bool> touched(lows.size(), false);
    for (const auto& [row, entries] : n_rows) {
        std::vector<Rational> rvals(lows.size(), Rational(0));
        std::vector<bool> has(lows.size(), false);
        for (const auto& [pos, v] : entries) {
            rvals[pos] = v;
            has[pos] = true;
        }
        // forward substitution through the triangular R_L
        const std::size_t first = entries.front().first;
        std::vector<std::pair<std::size_t, Rational>> m;
        std::fill(mrow.begin(), mrow.end(), Rational(0));
        for (std::size_t pos = first; pos < lows.size(); ++pos) {
            const auto& col = rb.cols[order[pos]];
            Rational acc = has[pos] ? rvals[pos] : Rational(0);
            for (std::size_t e = 0; e + 1 < col.size(); ++e) {
                auto li = l_index.find(col[e].first);
                if (li == l_index.end() || li->second < first) continue;
                if (sgn(mrow[li->second]) != 0) acc -= mrow[li->second] * col[e].second;
            }
            if (sgn(acc) == 0) continue;
            mrow[pos] = acc / col.back().second;
            m.emplace_back(pos, mrow[pos]);
        }
        if (m.empty()) continue;
        Rational b = zat(row);
        for (const auto& [pos, v] : m) {
            b -= v * zat(lows[pos]);
            touched[pos] = true;
        }
        rows.push_back({row, std::move(m), std::move(b)});
    }

    // LP variables: x_j = p_j - q_j for rows and touched L coordinates
    std::vector<std::size_t> var_simplex;
    std::unordered_map<std::size_t, std::size_t> var_of;
    for (const auto& r : rows) {
        var_of.emplace(r.simplex, var_simplex.size());
        var_simplex.push_back(r.simplex);
    }
    for (std::size_t pos = 0; pos < lows.size(); ++pos)
        if (touched[pos]) {
            var_of.emplace(lows[pos], var_simplex.size());
            var_simplex.push_back(lows[pos]);
        }
    const std::size_t nv = var_simplex.size();
    LpProblem lp;
    lp.variables = 2 * nv;
    lp.c.assign(2 * nv, Rational(1));
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        const Row& r = rows[ri];
        SparseVec<Rational> a;
        const std::size_t vi = var_of.at(r.simplex);
        a.emplace_back(2 * vi, Rational(1));
        a.emplace_back(2 * vi + 1, Rational(-1));
        for (const auto& [pos, v] : r.m) {
            const std::size_t vl = var_of.at(lows[pos]);
            a.emplace_back(2 * vl, Rational(-v));
            a.emplace_back(2 * vl + 1, v);
        }
        normalize(a);
        lp.rows.push_back(std::move(a));
        lp.b.push_back(r.b);
        lp.initial_basis.push_back(sgn(r.b) >= 0 ? 2 * vi : 2 * vi + 1);
    }
    res.lp_rows = lp.rows.size();
    res.lp_columns = lp.variables;

    // coordinates fixed outside the LP: non-low rows without dependence keep z, free lows go to 0
    SparseVec<Rational> x;
    for (const auto& [id, c] : z.terms)
        if (!var_of.count(id) && !l_index.count(id)) x.emplace_back(id, c);

    auto assemble = [&](const std::vector<Rational>& vals) {
        SparseVec<Rational> out = x;
        for (std::size_t j = 0; j < nv; ++j)
            if (sgn(vals[j]) != 0) out.emplace_back(var_simplex[j], vals[j]);
        normalize(out);
        return out;
    };
    auto admissible = [&](const SparseVec<Rational>& cand) {
        SparseVec<Rational> d = cand;
        sub_scaled(d, Rational(1), z.terms);
        return rb.reduces_to_zero(std::move(d));
    };

    SparseVec<Rational> best;
    if (lp.rows.empty()) {
        best = x;
    } else {
        LpResult sol = lp_solve(lp, opt.lp);
        std::vector<Rational> vals(nv);
        if (sol.exact) {
            for (std::size_t j = 0; j < nv; ++j) vals[j] = (*sol.x_exact)[2 * j] - (*sol.x_exact)[2 * j + 1];
        } else {
            for (std::size_t j = 0; j < nv; ++j) vals[j] = nearest_fraction(sol.x[2 * j] - sol.x[2 * j + 1], 10000);
        }
        best = assemble(vals);
        if (!admissible(best) && !sol.exact) {
            LpOptions exact = opt.lp;
            exact.mode = LpMode::Exact;
            sol = lp_solve(lp, exact);
            for (std::size_t j = 0; j < nv; ++j) vals[j] = (*sol.x_exact)[2 * j] - (*sol.x_exact)[2 * j + 1];
            best = assemble(vals);
        }
        res.exact_lp = sol.exact;
        res.duality_gap = sol.duality_gap;
        res.iterations = sol.iterations;
    }
    if (!admissible(best)) throw NumericalFailure("optimal chain left the homology class");
    res.chain = Chain{z.complex, p, std::move(best)};
    res.norm = l1_norm(res.chain);
    if (res.norm > res.input_norm) throw NumericalFailure("optimal chain has a larger norm than its input");
    return res;
}

}  // namespace

L1Result l1_optimal_cycle(const Chain& z, const L1Options& options) { return solve_l1(z, false, options); }

L1Result l1_optimal_relative_cycle(const Chain& z, const L1Options& options) {
    return solve_l1(z, true, options);
}

bool differs_by_boundary(const Chain& a, const Chain& b, bool relative) {
    if (a.complex != b.complex || a.degree != b.degree) throw InvalidArgument("chains live in different groups");
    SparseVec<Rational> d = relative_terms(a, relative);
    sub_scaled(d, Rational(1), relative_terms(b, relative));
    return reduce_boundary(*a.complex, a.degree, relative).reduces_to_zero(std::move(d));
}

CoverageSet coverage_of_chain(const Chain& z, double r_c) {
    if (z.is_zero()) throw ZeroChain();
    CoverageSet out;
    out.r_c = r_c;
    for (const auto& [id, c] : z.terms)
        for (int v : z.complex->vertices(id)) out.active.push_back(v);
    std::sort(out.active.begin(), out.active.end());
    out.active.erase(std::unique(out.active.begin(), out.active.end()), out.active.end());
    return out;
}

MinimalCoverage minimal_coverage_cycle(const Chain& fz, double r_c, const L1Options& options) {
    if (fz.degree < 1) throw InvalidArgument("coverage cycles have positive degree");
    MinimalCoverage out;
    out.optimum = l1_optimal_relative_cycle(fz, options);
    out.coverage = coverage_of_chain(out.optimum.chain, r_c);
    return out;
}

}  // namespace ripscover
