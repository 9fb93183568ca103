#include "doctest.h"
#include "fixtures.hpp"
#include "ftflow/analysis.hpp"

using namespace ftflow;
using VV = std::vector<std::vector<std::string>>;

TEST_CASE("heights") {
    CHECK(height(fixture("m1_ns_sphere")) == 1);
    CHECK(height(fixture("m2_rational_torus")) == 0);
    CHECK(height(fixture("m6_gradient_sphere")) == 1);
    CHECK(height(fixture("m8_cherry_torus")) == 2);
    CHECK(height(fixture("m4_two_cycle_torus")) == 1);
    CHECK(height(fixture("m3_figure_eight")) == 1);
}

TEST_CASE("poset is acyclic and heights are consistent") {
    for (auto name : {"m1_ns_sphere", "m3_figure_eight", "m5_reeb_annulus", "m6_gradient_sphere", "m8_cherry_torus",
                      "strict_circuit_torus", "l_piece_torus"}) {
        CAPTURE(name);
        auto P = orbit_class_poset(fixture(name));
        for (size_t x = 0; x < P.elements.size(); ++x)
            for (int y : P.below[x]) CHECK(P.heights[x] > P.heights[y]);
    }
}

TEST_CASE("poset elements of the cherry") {
    auto P = orbit_class_poset(fixture("m8_cherry_torus"));
    CHECK(P.heights[P.index_of("s")] == 0);
    CHECK(P.heights[P.index_of("gam")] == 0);
    CHECK(P.heights[P.index_of("u")] == 1);
    CHECK(P.heights[P.index_of("U2")] == 2);
    CHECK(P.index_of("missing") == -1);
}

TEST_CASE("strict limit circuits") {
    CHECK(strict_limit_nonperiodic_circuits(fixture("m8_cherry_torus")).empty());
    CHECK(strict_limit_nonperiodic_circuits(fixture("m6_gradient_sphere")).empty());
    CHECK(strict_limit_nonperiodic_circuits(fixture("m3_figure_eight")).empty());
    CHECK(strict_limit_nonperiodic_circuits(fixture("strict_circuit_torus")) == VV{{"e", "u"}, {"u"}});
}

TEST_CASE("omega equals closure of closed orbits") {
    CHECK(omega_equals_closure_of_closed(fixture("m1_ns_sphere")));
    CHECK(omega_equals_closure_of_closed(fixture("m4_two_cycle_torus")));
    CHECK(omega_equals_closure_of_closed(fixture("m8_cherry_torus")));
    CHECK_FALSE(omega_equals_closure_of_closed(fixture("strict_circuit_torus")));
    CHECK_FALSE(omega_equals_closure_of_closed(fixture("l_piece_torus")));
    CHECK_FALSE(is_finite_type(fixture("l_piece_torus")));
    CHECK(is_finite_type(fixture("k_klein")));
}

TEST_CASE("periodic bordered circuits") {
    CHECK(periodic_bordered_circuits(fixture("m8_cherry_torus")).empty());
    CHECK(periodic_bordered_circuits(fixture("strict_circuit_torus")) == VV{{"e", "u"}});
}

TEST_CASE("Poincare-Hopf") {
    for (auto name : {"m1_ns_sphere", "m2_rational_torus", "m3_figure_eight", "m4_two_cycle_torus", "m4_reeb_torus",
                      "m5_reeb_annulus", "m6_gradient_sphere", "m8_cherry_torus", "strict_circuit_torus",
                      "l_piece_torus", "k_klein", "m_projective"}) {
        CAPTURE(name);
        CHECK(poincare_hopf_check(fixture(name)));
    }
    auto m = fixture("m6_gradient_sphere");
    for (auto& p : m.points)
        if (p.id == "x") p.mult = 2;
    CHECK_FALSE(poincare_hopf_check(m));
    m = fixture("m6_gradient_sphere");
    m.surface.genus = 1;
    CHECK_FALSE(poincare_hopf_check(m));
}

TEST_CASE("Poincare-Hopf with boundary points") {
    FlowModel m;
    m.surface = {true, 0, 1};  // disk
    m.points = {{"p", PointKind::BSink, 0}, {"q", PointKind::BSource, 0}};
    CHECK(poincare_hopf_check(m));
    m.points.push_back({"y", PointKind::BSaddle, 1});
    CHECK_FALSE(poincare_hopf_check(m));
    m.points.push_back({"r", PointKind::BSink, 0});
    CHECK(poincare_hopf_check(m));
}
