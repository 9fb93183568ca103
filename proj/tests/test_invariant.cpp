#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "ftflow/canon.hpp"
#include "ftflow/invariant.hpp"
#include "ftflow/model_io.hpp"
#include "ftflow/validate.hpp"
#include "transform.hpp"

using namespace ftflow;
using V = std::vector<std::string>;

namespace {

const char* const kFinite[] = {"m1_ns_sphere",    "m2_rational_torus", "m3_figure_eight",    "m4_two_cycle_torus",
                               "m4_reeb_torus",   "m5_reeb_annulus",   "m6_gradient_sphere", "m8_cherry_torus",
                               "strict_circuit_torus", "k_klein",      "m_projective"};

}  // namespace

TEST_CASE("tuple of the north-south sphere") {
    auto t = compute_invariant(fixture("m1_ns_sphere"));
    CHECK(t.g_ss.vertices.size() == 2);
    CHECK(t.g_ss.edges.empty());
    CHECK(t.g_dplus.vertices.size() == 2);
    CHECK(t.g_dplus.isolated_vertices().size() == 2);
    REQUIRE(t.g_dual.vertices.size() == 1);
    CHECK(t.g_dual.vertices[0].label == PieceLabel::APlus);
    CHECK(format_dss(t.g_dual.vertices[0].dss) == "({n},{s})");
}

TEST_CASE("tuple of the rational torus") {
    auto t = compute_invariant(fixture("m2_rational_torus"));
    CHECK(t.g_ss.vertices.empty());
    CHECK(t.g_dplus.vertices.empty());
    REQUIRE(t.g_dual.vertices.size() == 1);
    CHECK(t.g_dual.vertices[0].label == PieceLabel::T);
    CHECK(t.g_dual.vertices[0].dss.kind == DssLabel::Kind::Empty);
}

TEST_CASE("tuple of the gradient sphere") {
    auto t = compute_invariant(fixture("m6_gradient_sphere"));
    CHECK(t.g_ss.vertices.size() == 4);
    CHECK(t.g_ss.edges.size() == 4);
    CHECK(t.g_ss.edge_labels.size() == 4);
    REQUIRE(t.g_dual.vertices.size() == 2);
    for (const auto& v : t.g_dual.vertices) CHECK(v.label == PieceLabel::D);
    CHECK_FALSE(describe(t).empty());
}

TEST_CASE("locally dense pieces have no invariant") {
    try {
        compute_invariant(fixture("l_piece_torus"));
        FAIL("expected NotFiniteType");
    } catch (const InvariantError& e) {
        CHECK(e.code == InvariantError::Code::NotFiniteType);
    }
    CHECK_THROWS_AS(canonical_code(fixture("l_piece_torus")), InvariantError);
    CHECK_NOTHROW(structure_code(fixture("l_piece_torus")));
}

TEST_CASE("reconstruction round trip") {
    for (auto name : kFinite) {
        CAPTURE(name);
        auto m = fixture(name);
        auto r = reconstruct(compute_invariant(m));
        CHECK(validate_model(r).ok());
        CHECK(structure_code(r) == structure_code(m));
    }
    auto t = reconstruct(compute_invariant(fixture("m2_rational_torus")));
    REQUIRE(t.pieces.size() == 1);
    CHECK(t.pieces[0].label == PieceLabel::T);
}

TEST_CASE("inconsistent tuples") {
    auto t = compute_invariant(fixture("m6_gradient_sphere"));
    t.g_dual.vertices[0].dss.first = {"ghost"};
    try {
        reconstruct(t);
        FAIL("expected InconsistentTuple");
    } catch (const InvariantError& e) {
        CHECK(e.code == InvariantError::Code::InconsistentTuple);
    }
    t = compute_invariant(fixture("m6_gradient_sphere"));
    std::swap(t.g_dual.vertices[0].dss, t.g_dual.vertices[1].dss);
    CHECK_THROWS_AS(reconstruct(t), InvariantError);
    t = compute_invariant(fixture("m6_gradient_sphere"));
    t.g_ss.edges[0].ends[0] = "nowhere";
    CHECK_THROWS_AS(reconstruct(t), InvariantError);
    t = compute_invariant(fixture("m3_figure_eight"));
    t.g_dual.vertices[0].label = PieceLabel::APlus;
    CHECK_THROWS_AS(reconstruct(t), InvariantError);
}

TEST_CASE("relabelling the gradient sphere keeps its code") {
    auto m = fixture("m6_gradient_sphere");
    auto text = serialize_model(m);
    // swap the two sources
    for (auto& p : m.points) p.id = p.id == "a" ? "b" : p.id == "b" ? "a" : p.id;
    for (auto& s : m.seps)
        for (auto* at : {&s.tail, &s.head}) at->id = at->id == "a" ? "b" : at->id == "b" ? "a" : at->id;
    for (auto& r : m.rotations) r.point = r.point == "a" ? "b" : r.point == "b" ? "a" : r.point;
    CHECK(validate_model(m).ok());
    CHECK(canonical_code(m) == canonical_code(fixture("m6_gradient_sphere")));
}

TEST_CASE("mirror images are valid and equivalent") {
    for (auto name : kFinite) {
        CAPTURE(name);
        auto m = fixture(name);
        auto r = testing::reflect(m);
        auto rep = validate_model(r);
        CHECK_MESSAGE(rep.ok(), rep.to_text());
        CHECK(canonical_code(r) == canonical_code(m));
    }
}

TEST_CASE("random presentations keep the code") {
    std::mt19937 rng(7);
    for (auto name : kFinite) {
        CAPTURE(name);
        auto m = fixture(name);
        auto code = canonical_code(m);
        for (int i = 0; i < 50; ++i) {
            auto r = testing::random_presentation(m, rng);
            auto rep = validate_model(r);
            REQUIRE_MESSAGE(rep.ok(), std::string(rep.to_text() + serialize_model(r)));
            CHECK(canonical_code(r) == code);
        }
    }
}

TEST_CASE("distinct fixtures have distinct codes") {
    std::set<std::string> codes;
    for (auto name : kFinite) codes.insert(canonical_code(fixture(name)).hex());
    CHECK(codes.size() == std::size(kFinite));
    CHECK_FALSE(equivalent(fixture("m1_ns_sphere"), fixture("m2_rational_torus")));
    CHECK_FALSE(equivalent(fixture("m4_two_cycle_torus"), fixture("m4_reeb_torus")));
    CHECK(equivalent(fixture("m3_figure_eight"), testing::reflect(fixture("m3_figure_eight"))));
}

TEST_CASE("code format") {
    auto hex = canonical_code(fixture("m1_ns_sphere")).hex();
    CHECK(hex.substr(0, 2) == "01");
    CHECK(hex.find_first_not_of("0123456789abcdef") == std::string::npos);
    CHECK(hex == canonical_code(parse_model(serialize_model(fixture("m1_ns_sphere")))).hex());
}

TEST_CASE("certificate distinguishes coloured graphs") {
    using detail::ColouredGraph;
    ColouredGraph path, triangle, path2;
    for (auto* g : {&path, &triangle, &path2})
        for (int i = 0; i < 3; ++i) g->add("x");
    path.link(0, 1, 0);
    path.link(1, 2, 0);
    path2.link(2, 0, 0);
    path2.link(1, 2, 0);
    triangle = path;
    triangle.link(2, 0, 0);
    CHECK(detail::canonical_certificate(path) == detail::canonical_certificate(path2));
    CHECK(detail::canonical_certificate(path) != detail::canonical_certificate(triangle));
    ColouredGraph coloured = path;
    coloured.edges[0][2] = 1;
    CHECK(detail::canonical_certificate(coloured) != detail::canonical_certificate(path));
}
