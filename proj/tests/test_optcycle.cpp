#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "ripscover/corpus.hpp"
#include "ripscover/criteria.hpp"
#include "ripscover/error.hpp"
#include "ripscover/optcycle.hpp"
#include "support.hpp"

using namespace ripscover;
using testing_support::random_int;
using testing_support::random_points;

namespace {

using Terms = std::vector<std::pair<std::vector<int>, Rational>>;

LpOptions mode(LpMode m) {
    LpOptions o;
    o.mode = m;
    return o;
}

L1Options l1_mode(LpMode m) {
    L1Options o;
    o.lp.mode = m;
    return o;
}

// Square 0-1-2-3 with a vertex 4 attached to the edge 12 by a filled triangle.
ComplexPtr square_with_ear() {
    std::vector<std::vector<int>> s = {{0}, {1}, {2}, {3}, {4}, {0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 4}, {2, 4}, {1, 2, 4}};
    return FilteredComplex::from_simplices(5, s, {}, std::vector<bool>(5, false));
}

// Strip with fence top row 0 1 2 over interior bottom row 3 4 5, two triangles at the left end.
ComplexPtr strip() {
    std::vector<std::vector<int>> s = {{0},    {1},    {2},    {3},    {4},       {5},      {0, 1}, {1, 2},
                                       {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5},    {0, 4},   {0, 3, 4}, {0, 1, 4}};
    return FilteredComplex::from_simplices(6, s, {}, {true, true, true, false, false, false});
}

// Minimum of sum |z_i + t b_i| over real t: attained at a breakpoint.
Rational one_parameter_min(const std::vector<Rational>& z, const std::vector<Rational>& b) {
    auto norm = [&](const Rational& t) {
        Rational s = 0;
        for (std::size_t i = 0; i < z.size(); ++i) s += abs(z[i] + t * b[i]);
        return s;
    };
    Rational best = norm(0);
    for (std::size_t i = 0; i < z.size(); ++i)
        if (sgn(b[i]) != 0) best = std::min(best, norm(-z[i] / b[i]));
    return best;
}

// Rational Gauss-Jordan solve of the square system; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && sgn(a[piv][c]) == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || sgn(a[r][c]) == 0) continue;
            const Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
    return b;
}

// Rows of [A | b] spanning the row space, in order.
std::vector<std::size_t> independent_rows(const std::vector<std::vector<Rational>>& a) {
    std::vector<std::vector<Rational>> kept;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<Rational> v = a[i];
        for (const auto& k : kept) {
            std::size_t lead = 0;
            while (sgn(k[lead]) == 0) ++lead;
            if (sgn(v[lead]) == 0) continue;
            const Rational f = v[lead] / k[lead];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= f * k[j];
        }
        if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) != 0; })) {
            kept.push_back(v);
            out.push_back(i);
        }
    }
    return out;
}

// Minimum over basic feasible solutions of min c^T x, A x = b, x >= 0.
std::optional<Rational> vertex_enumeration(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                                           const std::vector<Rational>& c) {
    const std::size_t m = a.size();
    const std::size_t n = c.size();
    std::optional<Rational> best;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != m) continue;
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j)
            if (mask & (1u << j)) cols.push_back(j);
        std::vector<std::vector<Rational>> sq(m, std::vector<Rational>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < m; ++k) sq[i][k] = a[i][cols[k]];
        const auto xb = solve_square(sq, b);
        if (!xb) continue;
        if (std::any_of(xb->begin(), xb->end(), [](const Rational& v) { return sgn(v) < 0; })) continue;
        Rational obj = 0;
        for (std::size_t k = 0; k < m; ++k) obj += c[cols[k]] * (*xb)[k];
        if (!best || obj < *best) best = obj;
    }
    return best;
}

}  // namespace

TEST_CASE("lp examples") {
    for (LpMode m : {LpMode::Exact, LpMode::Float, LpMode::Auto}) {
        // min |x| s.t. x = 5 + y: variables x+, x-, y
        LpProblem p;
        p.variables = 3;
        p.c = {1, 1, 0};
        p.rows = {{{0, Rational(1)}, {1, Rational(-1)}, {2, Rational(-1)}}};
        p.b = {5};
        p.free = {false, false, true};
        CHECK(lp_solve(p, mode(m)).objective == doctest::Approx(0.0));

        // min |x1| + |x2| s.t. x = (1, 1)
        LpProblem q;
        q.variables = 4;
        q.c = {1, 1, 1, 1};
        q.rows = {{{0, Rational(1)}, {1, Rational(-1)}}, {{2, Rational(1)}, {3, Rational(-1)}}};
        q.b = {1, 1};
        const LpResult r = lp_solve(q, mode(m));
        CHECK(r.objective == doctest::Approx(2.0));
        CHECK(r.duality_gap <= 1e-9);
        if (m == LpMode::Exact) {
            REQUIRE(r.objective_exact);
            CHECK(*r.objective_exact == 2);
        }
    }
}

TEST_CASE("lp rejects infeasible and unbounded problems") {
    LpProblem infeasible;
    infeasible.variables = 1;
    infeasible.c = {1};
    infeasible.rows = {{{0, Rational(1)}}};
    infeasible.b = {-1};
    CHECK_THROWS_AS(lp_solve(infeasible, mode(LpMode::Exact)), InvalidArgument);

    LpProblem unbounded;
    unbounded.variables = 2;
    unbounded.c = {-1, 0};
    unbounded.rows = {{{0, Rational(1)}, {1, Rational(-1)}}};
    unbounded.b = {0};
    CHECK_THROWS_AS(lp_solve(unbounded, mode(LpMode::Exact)), InvalidArgument);
}

TEST_CASE("property: lp optimum equals vertex enumeration") {
    UniformStream u(41);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(random_int(u, 5));
        const std::size_t m = 1 + static_cast<std::size_t>(random_int(u, static_cast<int>(std::min<std::size_t>(n - 1, 3))));
        std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n));
        std::vector<Rational> x0(n), c(n), b(m, 0);
        for (std::size_t j = 0; j < n; ++j) {
            x0[j] = random_int(u, 4);
            c[j] = random_int(u, 7) - 1;  // a few negative costs
        }
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] = random_int(u, 7) - 3;
                b[i] += a[i][j] * x0[j];
            }
        // boundedness: an extra row capping the total
        std::vector<Rational> cap(n + 1, 1);
        a.push_back(cap);
        for (auto& row : a)
            if (row.size() == n) row.push_back(0);
        Rational total = 0;
        for (const auto& v : x0) total += v;
        b.push_back(total + 3);
        c.push_back(0);

        // the enumeration needs full row rank; the solver gets every row
        std::vector<std::vector<Rational>> ab = a;
        for (std::size_t i = 0; i < ab.size(); ++i) ab[i].push_back(b[i]);
        std::vector<std::vector<Rational>> ar;
        std::vector<Rational> br;
        for (std::size_t i : independent_rows(ab)) {
            ar.push_back(a[i]);
            br.push_back(b[i]);
        }
        const auto truth = vertex_enumeration(ar, br, c);
        REQUIRE(truth);
        LpProblem p;
        p.variables = n + 1;
        p.c = c;
        p.b = b;
        for (const auto& row : a) {
            SparseVec<Rational> r;
            for (std::size_t j = 0; j < row.size(); ++j)
                if (sgn(row[j]) != 0) r.emplace_back(j, row[j]);
            p.rows.push_back(r);
        }
        const LpResult ex = lp_solve(p, mode(LpMode::Exact));
        REQUIRE(ex.objective_exact);
        CHECK(*ex.objective_exact == *truth);
        CHECK(lp_solve(p, mode(LpMode::Float)).objective == doctest::Approx(truth->get_d()).epsilon(1e-9));
    }
}

TEST_CASE("nearest fraction") {
    CHECK(nearest_fraction(0.5, 10) == Rational(1, 2));
    CHECK(nearest_fraction(-2.0 / 3.0 + 1e-12, 100) == Rational(-2, 3));
    CHECK(nearest_fraction(3.14159265, 10) == Rational(22, 7));
    CHECK(nearest_fraction(7.0, 1) == 7);
}

TEST_CASE("optimal cycle examples") {
    for (LpMode m : {LpMode::Exact, LpMode::Float}) {
        SUBCASE("square loop without triangles is already optimal") {
            const std::vector<int> none;
            const ComplexPtr k = build_filtered_rips(FiniteMetric::from_points(std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}), none, 2, 1.0);
            const Chain z = make_chain<Rational>(k, 1, Terms{{{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 1}, {{0, 3}, -1}});
            const L1Result r = l1_optimal_cycle(z, l1_mode(m));
            CHECK(r.chain.terms == z.terms);
            CHECK(r.norm == 4);
        }
        SUBCASE("long way around the ear") {
            const ComplexPtr k = square_with_ear();
            const Chain z = make_chain<Rational>(k, 1, Terms{{{0, 1}, 1}, {{1, 4}, 1}, {{2, 4}, -1}, {{2, 3}, 1}, {{0, 3}, -1}});
            const L1Result r = l1_optimal_cycle(z, l1_mode(m));
            // z + t d[124] over the ordered edges 01 12 23 03 14 24
            const Rational frozen = one_parameter_min({1, 0, 1, -1, 1, -1}, {0, 1, 0, 0, -1, 1});
            CHECK(frozen == 4);
            CHECK(r.norm == frozen);
            CHECK(r.norm < r.input_norm);
            CHECK(differs_by_boundary(r.chain, z, false));
            const Chain expect = make_chain<Rational>(k, 1, Terms{{{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 1}, {{0, 3}, -1}});
            CHECK(r.chain.terms == expect.terms);
        }
        SUBCASE("boundary of a triangle optimizes to zero") {
            const ComplexPtr k = square_with_ear();
            const Chain z = make_chain<Rational>(k, 1, Terms{{{1, 2}, 1}, {{2, 4}, 1}, {{1, 4}, -1}});
            const L1Result r = l1_optimal_cycle(z, l1_mode(m));
            CHECK(r.chain.is_zero());
            CHECK(r.norm == 0);
        }
    }
    const ComplexPtr k = square_with_ear();
    CHECK_THROWS_AS(l1_optimal_cycle(make_chain<Rational>(k, 1, Terms{{{0, 1}, 1}})), NotACycle);
}

TEST_CASE("optimal relative cycle examples") {
    SUBCASE("empty fence reduces to the absolute problem") {
        const ComplexPtr k = square_with_ear();
        const Chain z = make_chain<Rational>(k, 1, Terms{{{0, 1}, 1}, {{1, 4}, 1}, {{2, 4}, -1}, {{2, 3}, 1}, {{0, 3}, -1}});
        const L1Result a = l1_optimal_cycle(z);
        const L1Result r = l1_optimal_relative_cycle(z);
        CHECK(a.chain.terms == r.chain.terms);
        CHECK(a.norm == r.norm);
    }
    SUBCASE("no triangles outside the fence leaves only slack") {
        std::vector<std::vector<int>> s = {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}};
        const ComplexPtr k = FilteredComplex::from_simplices(3, s, {}, {true, true, false});
        const Chain z = make_chain<Rational>(k, 1, Terms{{{0, 2}, 1}, {{1, 2}, -1}});
        const L1Result r = l1_optimal_relative_cycle(z);
        CHECK(r.chain.terms == z.terms);
        CHECK(r.norm == 2);
    }
    SUBCASE("strip reroutes through the fence") {
        const ComplexPtr k = strip();
        const Chain z = make_chain<Rational>(k, 1, Terms{{{0, 3}, 1}, {{3, 4}, 1}, {{4, 5}, 1}, {{2, 5}, -1}});
        CHECK(boundary_of(z, true).is_zero());
        // brute force over y on a half-integer grid, fence coordinates dropped
        Rational best = 100;
        for (int i = -4; i <= 4; ++i)
            for (int j = -4; j <= 4; ++j) {
                const Rational y1 = Rational(i) / 2;
                const Rational y2 = Rational(j) / 2;
                // non-fence edges 34 45 03 14 25 04; d[034] = 34 - 04 + 03, d[014] = 14 - 04 + 01
                const std::vector<Rational> x = {1 + y1, Rational(1), 1 + y1, y2, Rational(-1), -y1 - y2};
                Rational s = 0;
                for (const auto& v : x) s += abs(v);
                best = std::min(best, s);
            }
        CHECK(best == 3);
        for (LpMode m : {LpMode::Exact, LpMode::Float}) {
            const L1Result r = l1_optimal_relative_cycle(z, l1_mode(m));
            CHECK(r.norm == best);
            CHECK(r.input_norm == 4);
            CHECK(differs_by_boundary(r.chain, z, true));
            CHECK(boundary_of(r.chain, true).is_zero());
            for (const auto& [id, c] : r.chain.terms) CHECK_FALSE(k->fence(id));
        }
    }
    SUBCASE("non-relative cycle is rejected") {
        const ComplexPtr k = strip();
        CHECK_THROWS_AS(l1_optimal_relative_cycle(make_chain<Rational>(k, 1, Terms{{{3, 4}, 1}})), NotARelativeCycle);
    }
}

TEST_CASE("coverage of a chain") {
    const ComplexPtr k = square_with_ear();
    const auto tri = make_chain<Rational>(k, 2, Terms{{{1, 2, 4}, 1}});
    CHECK(coverage_of_chain(tri, 0.3).active == std::vector<int>{1, 2, 4});
    CHECK(coverage_of_chain(tri, 0.3).r_c == 0.3);
    const auto mixed = make_chain<Rational>(k, 1, Terms{{{0, 1}, 1}, {{2, 3}, 0}});
    CHECK(coverage_of_chain(mixed).active == std::vector<int>{0, 1});
    CHECK_THROWS_AS(coverage_of_chain(Chain{k, 1, {}}), ZeroChain);
}

TEST_CASE("property: optimum is minimal, no larger than the input and homologous") {
    UniformStream u(42);
    int enumerated = 0;
    for (int t = 0; t < 80; ++t) {
        const std::size_t n = 4 + static_cast<std::size_t>(random_int(u, 3));
        std::vector<int> fence;
        for (std::size_t i = 0; i < n; ++i)
            if (u.next() < 0.35) fence.push_back(static_cast<int>(i));
        const bool rel = !fence.empty();
        const ComplexPtr k = build_filtered_rips(FiniteMetric::from_points(random_points(u, n, 1.5)), fence, 2, 1.1);
        // input: bar representatives plus random boundaries
        Chain z{k, 1, {}};
        for (const auto& iv : persistence<Rational>(k, 1, rel).intervals)
            if (iv.death == kInf) sub_scaled(z.terms, Rational(u.next() < 0.5 ? 1 : -1), iv.representative.terms);
        for (std::size_t id : k->of_dim(2))
            if (!k->fence(id) && u.next() < 0.5) {
                Chain tri{k, 2, {{id, Rational(random_int(u, 3) - 1)}}};
                normalize(tri.terms);
                sub_scaled(z.terms, Rational(1), boundary_of(tri, rel).terms);
            }
        if (z.is_zero()) continue;

        const L1Result r = rel ? l1_optimal_relative_cycle(z) : l1_optimal_cycle(z);
        CHECK(r.norm <= r.input_norm);
        CHECK(r.norm == l1_norm(r.chain));
        CHECK(differs_by_boundary(r.chain, z, rel));
        CHECK(boundary_of(r.chain, rel).is_zero());
        if (rel) {
            L1Options free_slack;
            free_slack.charge_fence_slack = false;
            CHECK(l1_optimal_relative_cycle(z, free_slack).norm == r.norm);
        }

        // exhaustive search over {-1, 0, 1} coefficients
        std::vector<std::size_t> edges;
        for (std::size_t id : k->of_dim(1))
            if (!(rel && k->fence(id))) edges.push_back(id);
        if (edges.size() > 12) continue;
        const bool unit = std::all_of(r.chain.terms.begin(), r.chain.terms.end(),
                                      [](const auto& e) { return abs(e.second) == 1; });
        std::size_t total = 1;
        for (std::size_t i = 0; i < edges.size(); ++i) total *= 3;
        Rational best = r.input_norm;
        for (std::size_t code = 0; code < total; ++code) {
            Chain c{k, 1, {}};
            std::size_t rest = code;
            for (std::size_t e : edges) {
                const int coeff = static_cast<int>(rest % 3) - 1;
                rest /= 3;
                if (coeff != 0) c.terms.emplace_back(e, Rational(coeff));
            }
            if (static_cast<long>(c.terms.size()) >= best.get_d()) continue;
            if (!boundary_of(c, rel).is_zero()) continue;
            if (differs_by_boundary(c, z, rel)) best = static_cast<long>(c.terms.size());
        }
        ++enumerated;
        if (unit)
            CHECK(r.norm == best);
        else
            CHECK(r.norm <= best);
    }
    CHECK(enumerated > 20);
}

TEST_CASE("corpus witnesses share one class at r_w up to scaling") {
    const Scenario s = corpus_scenario(1);
    const Radii& r = s.radii();
    const Verdict stable = stable_criterion(s);
    const Verdict dsg = dsg_criterion(s);
    REQUIRE(stable.holds);
    REQUIRE(dsg.holds);
    CHECK(dsg.rank == 1);
    WSliceModel<Rational> model(FiniteMetric::from_points(s.sensors()), fence_mask(s), 2, r.r_w);
    // the stable witness lives in the r_s complex as well; move it there
    std::vector<int> id(s.size());
    for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i);
    const Chain zs = push_chain(*stable.witness, id, dsg.witness->complex, true);
    CHECK(model.accept_if_independent(*dsg.witness));
    CHECK(model.is_zero_class(zs));
    CHECK(model.is_zero_class(Chain{zs.complex, 2, [&] {
                                        SparseVec<Rational> v = zs.terms;
                                        for (auto& e : v) e.second *= 3;
                                        return v;
                                    }()}));
}
