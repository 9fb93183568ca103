#include <algorithm>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "ftflow/analysis.hpp"
#include "ftflow/invariant.hpp"
#include "ftflow/surgery.hpp"
#include "ftflow/toolkit.hpp"
#include "ftflow/validate.hpp"
#include "transform.hpp"

using namespace ftflow;
using Code = SurgeryError::Code;

namespace {

template <class F>
Code error_of(F f) {
    try {
        f();
    } catch (const SurgeryError& e) {
        return e.code;
    }
    FAIL("no surgery error");
    return Code::Irreducible;
}

int count_kind(const FlowModel& m, PointKind k) {
    return static_cast<int>(std::count_if(m.points.begin(), m.points.end(), [&](const SingularPoint& p) { return p.kind == k; }));
}

int total_euler(const std::vector<FlowModel>& ms) {
    int chi = 0;
    for (const auto& m : ms) chi += m.surface.euler();
    return chi;
}

void check_sound(const std::vector<FlowModel>& comps, const FlowModel& before) {
    for (const auto& c : comps) {
        INFO(serialize_model(c));
        CHECK(validate_model(c).ok());
        CHECK(poincare_hopf_check(c));
        CHECK(euler_genus(c.surface) <= euler_genus(before.surface));
    }
}

const char* kClosedFixtures[] = {"m1_ns_sphere", "m2_rational_torus", "m3_figure_eight", "m4_reeb_torus",
                                 "m4_two_cycle_torus", "m5_reeb_annulus", "m6_gradient_sphere", "m8_cherry_torus",
                                 "strict_circuit_torus", "k_klein", "m_projective"};

}  // namespace

TEST_CASE("periodic cut of the rational torus") {
    auto r = cut_periodic(fixture("m2_rational_torus"), "U");
    REQUIRE(r.components.size() == 1);
    const auto& s = r.components[0];
    CHECK(s.surface == SurfaceSpec{true, 0, 0});
    CHECK(count_kind(s, PointKind::Center) == 2);
    REQUIRE(s.pieces.size() == 1);
    CHECK(s.pieces[0].label == PieceLabel::A);
    CHECK(r.step.kind == SurgeryKind::Co);
    CHECK(r.step.after.size() == 1);
}

TEST_CASE("periodic cuts of one-sided and Klein pieces") {
    auto p = cut_periodic(fixture("m_projective"), "U");
    REQUIRE(p.components.size() == 1);
    CHECK(p.components[0].surface == SurfaceSpec{true, 0, 0});
    CHECK(p.components[0].pieces[0].label == PieceLabel::A);
    CHECK(count_kind(p.components[0], PointKind::Center) == 2);

    auto k = cut_periodic(fixture("k_klein"), "U");
    REQUIRE(k.components.size() == 2);
    for (const auto& c : k.components) {
        CHECK(c.surface == SurfaceSpec{false, 1, 0});
        CHECK(c.pieces[0].label == PieceLabel::M);
    }
}

TEST_CASE("periodic cut errors") {
    CHECK(error_of([] { cut_periodic(fixture("m8_cherry_torus"), "u"); }) == Code::NotPeriodic);
    CHECK(error_of([] { cut_periodic(fixture("m4_two_cycle_torus"), "g1"); }) == Code::NotPeriodic);
    CHECK(error_of([] { cut_periodic(fixture("m1_ns_sphere"), "U"); }) == Code::NotPeriodic);
    CHECK(error_of([] { cut_periodic(fixture("m1_ns_sphere"), "nothing"); }) == Code::UnsupportedTarget);
}

TEST_CASE("periodic cuts at a collar cycle and at a periodic boundary") {
    auto m5 = fixture("m5_reeb_annulus");
    auto c = cut_periodic(m5, "g1");
    check_sound(c.components, m5);
    CHECK(c.components.size() == 2);
    // two center disks pasted on an annulus: chi goes from 0 to 2
    CHECK(total_euler(c.components) == m5.surface.euler() + 2);

    auto b = cut_periodic(m5, "b1");
    REQUIRE(b.components.size() == 1);
    CHECK(b.components[0].surface == SurfaceSpec{true, 0, 1});
    CHECK(count_kind(b.components[0], PointKind::Center) == 1);
}

TEST_CASE("transversal cut of the north-south sphere") {
    auto r = cut_transversal(fixture("m1_ns_sphere"), "U");
    REQUIRE(r.components.size() == 2);
    int sinks = 0, sources = 0;
    for (const auto& c : r.components) {
        CHECK(c.surface == SurfaceSpec{true, 0, 0});
        sinks += count_kind(c, PointKind::Sink);
        sources += count_kind(c, PointKind::Source);
    }
    CHECK(sinks == 2);
    CHECK(sources == 2);
}

TEST_CASE("transversal cut of the torus") {
    auto m4 = fixture("m4_two_cycle_torus");
    auto r = cut_transversal(m4, "U1");
    REQUIRE(r.components.size() == 1);
    const auto& s = r.components[0];
    CHECK(s.surface == SurfaceSpec{true, 0, 0});
    CHECK(count_kind(s, PointKind::Sink) == 1);
    CHECK(count_kind(s, PointKind::Source) == 1);
    CHECK(s.cycles.size() == 2);
    CHECK(error_of([] { cut_transversal(fixture("m3_figure_eight"), "U1"); }) == Code::NotTransversalCore);
    CHECK(error_of([] { cut_transversal(fixture("m6_gradient_sphere"), "U1"); }) == Code::NotTransversalCore);
}

TEST_CASE("diagram loop cuts") {
    CHECK(error_of([] { cut_diagram_loop(fixture("m3_figure_eight"), {"e1"}); }) == Code::NotEssential);
    CHECK(error_of([] { cut_diagram_loop(fixture("m8_cherry_torus"), {"f"}); }) == Code::NotInDiagram);
    CHECK(error_of([] { cut_diagram_loop(fixture("m3_figure_eight"), {"e1", "e2"}); }) == Code::NotInDiagram);
    CHECK(error_of([] { cut_diagram_loop(fixture("m3_figure_eight"), {"zz"}); }) == Code::NotInDiagram);
    CHECK(error_of([] { cut_diagram_loop(fixture("strict_circuit_torus"), {"e"}); }) == Code::NotEssential);

    auto t = fixture("strict_circuit_torus");
    auto r = cut_diagram_loop(t, {"u"});
    REQUIRE(r.components.size() == 1);
    const auto& s = r.components[0];
    CHECK(s.surface == SurfaceSpec{true, 0, 2});
    CHECK(count_kind(s, PointKind::BSaddle) == 2);
    CHECK(count_kind(s, PointKind::Saddle) == 0);
    CHECK(s.seps.size() == t.seps.size() + 1);
    check_sound(r.components, t);
}

TEST_CASE("diagram loops are listed") {
    auto loops = diagram_loops(fixture("m3_figure_eight"));
    CHECK(loops == std::vector<std::vector<std::string>>{{"e1"}, {"e2"}});
    CHECK(diagram_loops(fixture("m6_gradient_sphere")).empty());
}

TEST_CASE("Cherry blow-up of a limit cycle") {
    auto m4 = fixture("m4_two_cycle_torus");
    auto b = cherry_blowup(m4, "g1");
    CHECK(validate_model(b).ok());
    CHECK(b.surface == m4.surface);
    CHECK(b.points.size() == m4.points.size() + 2);
    CHECK(b.cycles.size() == m4.cycles.size() - 1);
    CHECK(count_kind(b, PointKind::Saddle) == 1);
    CHECK(count_kind(b, PointKind::Center) == 1);
    CHECK(equivalent(b, fixture("strict_circuit_torus")));
    CHECK(brute_force_equivalent(b, fixture("strict_circuit_torus")));

    auto back = cherry_inverse(b, "x");
    CHECK(canonical_code(back) == canonical_code(m4));
}

TEST_CASE("Cherry errors") {
    CHECK(error_of([] { cherry_blowup(fixture("m5_reeb_annulus"), "b1"); }) == Code::NotDirectedCircuit);
    CHECK(error_of([] { cherry_blowup(fixture("m8_cherry_torus"), "gam"); }) == Code::UnsupportedTarget);
    CHECK(error_of([] { cherry_inverse(fixture("m3_figure_eight"), "x"); }) == Code::UnsupportedTarget);
    CHECK(error_of([] { cherry_inverse(fixture("m6_gradient_sphere"), "x"); }) == Code::UnsupportedTarget);
}

TEST_CASE("Cherry round trip on every blowable cycle") {
    std::mt19937 rng(5);
    for (const char* name : {"m4_two_cycle_torus", "m4_reeb_torus", "m5_reeb_annulus", "strict_circuit_torus"}) {
        for (auto base : {fixture(name), testing::reflect(fixture(name)), testing::random_presentation(fixture(name), rng)}) {
            for (const auto& c : base.cycles) {
                INFO(name << " " << c.id);
                auto b = cherry_blowup(base, c.id);
                CHECK(validate_model(b).ok());
                CHECK(poincare_hopf_check(b));
                CHECK(b.surface == base.surface);
                CHECK(b.points.size() == base.points.size() + 2);
                CHECK(b.cycles.size() + 1 == base.cycles.size());
                std::string x;
                for (const auto& p : b.points)
                    if (!base.point(p.id) && p.kind == PointKind::Saddle) x = p.id;
                CHECK(canonical_code(cherry_inverse(b, x)) == canonical_code(base));
            }
        }
    }
}

TEST_CASE("Cherry blow-up does not depend on the presentation") {
    std::mt19937 rng(17);
    auto ref = canonical_code(cherry_blowup(fixture("m4_reeb_torus"), "g1"));
    for (int i = 0; i < 20; ++i) {
        auto m = testing::random_presentation(fixture("m4_reeb_torus"), rng);
        std::string g1;
        // the attracting cycle is the one whose sides are attracting
        for (const auto& c : m.cycles)
            if (c.sides[0].role == CycleRole::Attracting) g1 = c.id;
        CHECK(canonical_code(cherry_blowup(m, g1)) == ref);
    }
}

TEST_CASE("reduction to spheres on the fixtures") {
    for (const char* name : kClosedFixtures) {
        INFO(name);
        auto m = fixture(name);
        auto r = reduce_to_spheres(m);
        CHECK(r.steps.size() <= static_cast<size_t>(2 * m.surface.genus) + m.pieces.size());
        for (const auto& s : r.spheres) {
            CHECK(euler_genus(s.surface) == 0);
            CHECK(validate_model(s).ok());
        }
    }
    CHECK(reduce_to_spheres(fixture("m1_ns_sphere")).spheres.front() == fixture("m1_ns_sphere"));
    auto m2 = reduce_to_spheres(fixture("m2_rational_torus"));
    REQUIRE(m2.spheres.size() == 1);
    CHECK(count_kind(m2.spheres[0], PointKind::Center) == 2);
    auto m4 = reduce_to_spheres(fixture("m4_two_cycle_torus"));
    REQUIRE(m4.spheres.size() == 1);
    CHECK(count_kind(m4.spheres[0], PointKind::Sink) == 1);
    CHECK(count_kind(m4.spheres[0], PointKind::Source) == 1);
    CHECK(error_of([] { reduce_to_spheres(fixture("l_piece_torus")); }) == Code::UnsupportedTarget);
}

TEST_CASE("every applicable surgery on enumerated models is sound") {
    EnumerationBudget b;
    b.max_seps = 2;
    b.max_points = 2;
    b.max_cycles = 1;
    for (auto n : {"sphere", "torus", "rp2", "klein"}) b.surfaces.push_back(*surface_from_name(n));
    auto models = enumerate_models(b);
    REQUIRE(models.size() > 100);
    long applied = 0;
    for (const auto& m : models) {
        auto attempt = [&](auto f) {
            try {
                auto r = f();
                check_sound(r.components, m);
                ++applied;
            } catch (const SurgeryError&) {
            }
        };
        for (const auto& p : m.pieces) {
            attempt([&] { return cut_transversal(m, p.id); });
            attempt([&] { return cut_periodic(m, p.id); });
        }
        for (const auto& c : m.cycles) {
            attempt([&] { return cut_periodic(m, c.id); });
            try {
                auto bl = cherry_blowup(m, c.id);
                CHECK(validate_model(bl).ok());
                CHECK(bl.points.size() == m.points.size() + 2);
                ++applied;
            } catch (const SurgeryError&) {
            }
        }
        for (const auto& loop : diagram_loops(m)) attempt([&] { return cut_diagram_loop(m, loop); });
    }
    CHECK(applied > 100);
}
