#include <doctest.h>

#include <cmath>

#include "ripscover/corpus.hpp"
#include "ripscover/oracle.hpp"
#include "ripscover/scenario.hpp"
#include "support.hpp"

using namespace ripscover;

namespace {

Scenario unit_square(std::vector<Point2> sensors, double r_f) {
    return Scenario(ConvexPolygon::square(1.0), std::move(sensors), Radii{0.05, 0.05, 0.2, r_f}, 0.0);
}

Scenario with_radii(Radii r) {
    return Scenario(ConvexPolygon::square(kCorpusSide), {{2.0, 2.0}}, r, 0.1);
}

}  // namespace

TEST_CASE("fence membership uses the closed boundary distance") {
    const Scenario s = unit_square({{0.05, 0.5}, {0.5, 0.5}, {0.1, 0.5}}, 0.1);
    const auto f = fence_sensors(s);
    CHECK(f == std::vector<int>{0, 2});
    const auto m = fence_mask(s);
    CHECK(m == std::vector<bool>{true, false, true});
}

TEST_CASE("A3 at the equality bounds passes") {
    const Radii r{1.0 / std::sqrt(2.0), 1.0, std::sqrt(10.0), 0.15};
    const auto rep = validate_assumptions(with_radii(r), 0.02);
    CHECK(rep.at("A3").status == AssumptionStatus::Pass);
    CHECK(rep.entries.size() == 6);
    CHECK(rep.at("A6").status == AssumptionStatus::ByConstruction);
    CHECK(rep.ok());
}

TEST_CASE("A3 fails for a cover radius just below r_s/sqrt 2") {
    const auto rep = validate_assumptions(with_radii(Radii{0.70, 1.0, 3.2, 0.15}), 0.02);
    CHECK(rep.at("A3").status == AssumptionStatus::Fail);
    CHECK_FALSE(rep.ok());
    CHECK(rep.at("A3").evidence.find("0.7") != std::string::npos);
}

TEST_CASE("A3 fails for a weak radius below r_s sqrt 10") {
    const auto rep = validate_assumptions(with_radii(Radii{0.75, 1.0, 3.1, 0.15}), 0.02);
    CHECK(rep.at("A3").status == AssumptionStatus::Fail);
}

TEST_CASE("empty restricted domain is an error") {
    // r_hat = 0.4586 + 0.2/sqrt 2 = 0.6 on the unit square
    const double r_s = 0.2;
    const Radii r{r_s / std::sqrt(2.0), r_s, r_s * std::sqrt(10.0), 0.6 - r_s / std::sqrt(2.0)};
    const Scenario s(ConvexPolygon::square(1.0), {{0.5, 0.5}}, r, 0.0);
    CHECK_THROWS_AS(validate_assumptions(s, 0.02), EmptyRestrictedDomain);
}

TEST_CASE("grid step above r_s/10 is rejected") {
    CHECK_THROWS_AS(validate_assumptions(corpus_scenario(1), 0.2), InvalidArgument);
}

TEST_CASE("structural checks run on construction") {
    const Radii r = corpus_radii();
    CHECK_THROWS_AS(Scenario(ConvexPolygon::square(1.0), {{2.0, 0.5}}, r, 0.0), InvalidScenario);
    CHECK_THROWS_AS(Scenario(ConvexPolygon::square(1.0), {{0.5, 0.5}, {0.5, 0.5}}, r, 0.0), InvalidScenario);
    CHECK_THROWS_AS(Scenario(ConvexPolygon::square(1.0), {{0.5, 0.5}}, Radii{0, 1, 1, 1}, 0.0), InvalidScenario);
    CHECK_THROWS_AS(Scenario(ConvexPolygon::square(1.0), {{0.5, 0.5}}, r, -1.0), InvalidScenario);
}

TEST_CASE("perturbation clauses") {
    const Scenario s = corpus_scenario(3);
    const auto fence = fence_mask(s);
    int interior = -1;
    int fence_idx = -1;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double bd = s.domain().boundary_distance(s.sensors()[i]);
        if (!fence[i] && bd > 1.0 && interior < 0) interior = static_cast<int>(i);
        if (fence[i] && fence_idx < 0) fence_idx = static_cast<int>(i);
    }
    REQUIRE(interior >= 0);
    REQUIRE(fence_idx >= 0);

    SUBCASE("identity passes") {
        CHECK(validate_perturbation(s, Perturbation{s.sensors()}).ok);
    }
    SUBCASE("step bound") {
        Perturbation p{s.sensors()};
        p.targets[interior].x += s.epsilon() / 2 + 1e-6;
        const auto c = validate_perturbation(s, p);
        CHECK_FALSE(c.ok);
        CHECK(c.index == interior);
        CHECK(c.clause == PerturbationClause::StepBound);
    }
    SUBCASE("interior sensor entering the collar") {
        Scenario t = s;
        std::vector<Point2> pts = s.sensors();
        pts[interior] = {s.radii().r_f + 0.03, pts[interior].y};
        t = s.with_sensors(pts);
        Perturbation p{pts};
        p.targets[interior].x = s.radii().r_f - 0.01;
        const auto c = validate_perturbation(t, p);
        CHECK_FALSE(c.ok);
        CHECK(c.clause == PerturbationClause::InteriorEnteredCollar);
    }
    SUBCASE("fence sensor leaving the collar") {
        std::vector<Point2> pts = s.sensors();
        pts[fence_idx] = {s.radii().r_f - 0.01, 2.0};
        const Scenario t = s.with_sensors(pts);
        Perturbation p{pts};
        p.targets[fence_idx].x = s.radii().r_f + 0.03;
        const auto c = validate_perturbation(t, p);
        CHECK_FALSE(c.ok);
        CHECK(c.clause == PerturbationClause::FenceLeftCollar);
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(validate_perturbation(s, Perturbation{{}}), LengthMismatch);
    }
}

TEST_CASE("generated perturbations") {
    const Scenario s = corpus_scenario(5);
    SUBCASE("epsilon zero is the identity") {
        const Scenario z(s.domain(), s.sensors(), s.radii(), 0.0);
        const auto p = generate_perturbation(z, 11);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(p.targets[i].x == s.sensors()[i].x);
            CHECK(p.targets[i].y == s.sensors()[i].y);
        }
    }
    SUBCASE("all sensors near the boundary stay fixed") {
        const Scenario t(ConvexPolygon::square(kCorpusSide), {{0.1, 0.1}, {0.2, 2.0}, {3.9, 3.0}}, s.radii(), 0.1);
        const auto p = generate_perturbation(t, 4);
        for (std::size_t i = 0; i < t.size(); ++i) {
            CHECK(p.targets[i].x == t.sensors()[i].x);
            CHECK(p.targets[i].y == t.sensors()[i].y);
        }
    }
    SUBCASE("fixed seed is deterministic") {
        const auto a = generate_perturbation(s, 99);
        const auto b = generate_perturbation(s, 99);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(a.targets[i].x == b.targets[i].x);
            CHECK(a.targets[i].y == b.targets[i].y);
        }
        const auto c = generate_perturbation(s, 100);
        bool differs = false;
        for (std::size_t i = 0; i < s.size(); ++i) differs |= a.targets[i].x != c.targets[i].x;
        CHECK(differs);
    }
}

TEST_CASE("property: generated perturbations always validate") {
    UniformStream u(2024);
    std::size_t checked = 0;
    for (int sc = 0; sc < 100; ++sc) {
        const double eps = 0.02 + 0.3 * u.next();
        LayoutOptions lo;
        lo.kind = LayoutOptions::Kind::Random;
        lo.count = 20 + testing_support::random_int(u, 60);
        lo.fence_spacing = 0.4;
        const Scenario s = generate_scenario(ConvexPolygon::square(kCorpusSide), corpus_radii(), eps, lo,
                                             static_cast<std::uint64_t>(sc + 1));
        for (int seed = 0; seed < 100; ++seed) {
            const auto p = generate_perturbation(s, static_cast<std::uint64_t>(seed));
            const auto c = validate_perturbation(s, p);
            if (!c.ok) FAIL("scenario " << sc << " seed " << seed << ": " << c.detail);
            ++checked;
        }
    }
    CHECK(checked == 10000);
}

TEST_CASE("property: fence set is monotone in r_f") {
    UniformStream u(7);
    for (int trial = 0; trial < 200; ++trial) {
        const auto pts = testing_support::random_points(u, 30, kCorpusSide);
        const double a = 0.05 + 0.5 * u.next();
        const double b = a + 0.5 * u.next();
        const Radii ra{0.8, 1.0, 3.2, a};
        const Radii rb{0.8, 1.0, 3.2, b};
        const auto fa = fence_sensors(Scenario(ConvexPolygon::square(kCorpusSide), pts, ra, 0.0));
        const auto fb = fence_sensors(Scenario(ConvexPolygon::square(kCorpusSide), pts, rb, 0.0));
        CHECK(std::includes(fb.begin(), fb.end(), fa.begin(), fa.end()));
    }
}

TEST_CASE("property: A5 connectivity survives grid halving") {
    const std::vector<ConvexPolygon> domains = {
        ConvexPolygon::square(kCorpusSide), ConvexPolygon::rectangle(5.0, 3.0),
        ConvexPolygon({{0, 0}, {5, 0}, {2.5, 4.5}}), ConvexPolygon({{0, 0}, {4, 0}, {5, 2}, {3, 4}, {0, 3}})};
    for (const auto& d : domains) {
        const Scenario s(d, {{d.bounding_box().xmin + 1e-3 + (d.bounding_box().xmax - d.bounding_box().xmin) / 2,
                               d.bounding_box().ymin + 1.0}},
                         Radii{0.2, 0.25, 0.8, 0.1}, 0.0);
        for (double h : {0.025, 0.02, 0.015}) {
            const auto a = validate_assumptions(s, h);
            if (a.at("A5").status != AssumptionStatus::Pass) continue;
            CHECK(validate_assumptions(s, h / 2).at("A5").status == AssumptionStatus::Pass);
        }
        CHECK(connectivity_check(rasterize_restricted_domain(s, 0.02)));
    }
}

TEST_CASE("corpus radii sit at the A3 equality bounds") {
    const Radii r = corpus_radii();
    CHECK(r.r_c == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(r.r_w == doctest::Approx(std::sqrt(10.0)));
    CHECK(r.r_hat() == doctest::Approx(0.15 + 1.0 / std::sqrt(2.0)));
}
