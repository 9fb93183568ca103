#include <regex>

#include "doctest.h"
#include "fixtures.hpp"
#include "ftflow/model_io.hpp"
#include "ftflow/validate.hpp"

using namespace ftflow;

namespace {

const char* const kFixtures[] = {"m1_ns_sphere",   "m2_rational_torus", "m3_figure_eight",      "m4_two_cycle_torus",
                                 "m4_reeb_torus",  "m5_reeb_annulus",   "m6_gradient_sphere",   "m8_cherry_torus",
                                 "strict_circuit_torus", "l_piece_torus", "k_klein", "m_projective"};

std::string read_fixture(const std::string& name) {
    return serialize_model(parse_model_unchecked(serialize_model(fixture(name))));
}

ValidationReport check_text(const std::string& text) { return validate_model(parse_model_unchecked(text)); }

std::string replace(std::string s, const std::string& from, const std::string& to) {
    auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    return s.replace(pos, from.size(), to);
}

}  // namespace

TEST_CASE("fixtures validate and satisfy Euler consistency") {
    for (auto name : kFixtures) {
        CAPTURE(name);
        FlowModel m;
        REQUIRE_NOTHROW(m = fixture(name));
        auto rep = validate_model(m);
        CHECK_MESSAGE(rep.ok(), rep.to_text());
        CHECK(euler_from_cells(m) == m.surface.euler());
        CHECK(derived_surface(m) == m.surface);
    }
}

TEST_CASE("serialization round trip") {
    for (auto name : kFixtures) {
        CAPTURE(name);
        auto m = fixture(name);
        auto text = serialize_model(m);
        auto back = parse_model(text);
        m.normalize();
        CHECK(back == m);
        CHECK(serialize_model(back) == text);
    }
}

TEST_CASE("singularity index") {
    CHECK(singularity_index(PointKind::Sink, 0) == 1);
    CHECK(singularity_index(PointKind::Source, 0) == 1);
    CHECK(singularity_index(PointKind::Center, 0) == 1);
    CHECK(singularity_index(PointKind::Saddle, 1) == -1);
    CHECK(singularity_index(PointKind::Saddle, 0) == 0);
    CHECK(singularity_index(PointKind::Saddle, 3) == -3);
    CHECK_THROWS(singularity_index(PointKind::BSaddle, 1));
}

TEST_CASE("euler from cells on hand examples") {
    CHECK(euler_from_cells(fixture("m1_ns_sphere")) == 2);
    CHECK(euler_from_cells(fixture("m6_gradient_sphere")) == 2);
    CHECK(euler_from_cells(fixture("m2_rational_torus")) == 0);
}

TEST_CASE("surface names") {
    CHECK(surface_from_name("sphere") == SurfaceSpec{true, 0, 0});
    CHECK(surface_from_name("klein") == SurfaceSpec{false, 2, 0});
    CHECK(surface_from_name("torus+2") == SurfaceSpec{true, 1, 2});
    CHECK(surface_from_name("nonorientable:3") == SurfaceSpec{false, 3, 0});
    CHECK_FALSE(surface_from_name("donut"));
    CHECK(surface_name({false, 1, 0}) == "rp2");
}

TEST_CASE("syntax errors carry a line number") {
    auto text = replace(read_fixture("m6_gradient_sphere"), "kind=source", "kind=vortex");
    try {
        parse_model(text);
        FAIL("expected a syntax error");
    } catch (const ModelError& e) {
        CHECK(e.code == ViolationCode::SyntaxError);
        CHECK(e.line > 0);
    }
    CHECK_THROWS_AS(parse_model("[surface]\norientable=maybe genus=0\n"), ModelError);
    CHECK_THROWS_AS(parse_model("[nowhere]\n"), ModelError);
    CHECK_THROWS_AS(parse_model("[points]\nid=a kind=sink\n"), ModelError);
}

TEST_CASE("degree mismatch on a short saddle rotation") {
    auto text = replace(read_fixture("m6_gradient_sphere"), "order=e1:h,e3:t,e2:h,e4:t", "order=e1:h,e3:t,e2:h");
    CHECK(check_text(text).has(ViolationCode::DegreeMismatch));
}

TEST_CASE("rotation slot collision") {
    auto text = replace(read_fixture("m6_gradient_sphere"), "order=e1:h,e3:t,e2:h,e4:t", "order=e1:h,e3:t,e1:h,e4:t");
    try {
        parse_model(text);
        FAIL("expected rejection");
    } catch (const ModelError& e) {
        CHECK(e.code == ViolationCode::WalkInconsistency);
    }
}

TEST_CASE("dangling references") {
    auto text = replace(read_fixture("m6_gradient_sphere"), "tail=a head=x", "tail=zz head=x");
    CHECK(check_text(text).has(ViolationCode::DanglingReference));
    text = replace(read_fixture("m1_ns_sphere"), "@point:s", "@point:q");
    CHECK(check_text(text).has(ViolationCode::DanglingReference));
}

TEST_CASE("direction violations") {
    // separatrix entering a source
    auto text = replace(read_fixture("m6_gradient_sphere"), "id=e1 tail=a head=x", "id=e1 tail=x head=a");
    CHECK(check_text(text).has(ViolationCode::DirectionViolation));
    // saddle ends that do not alternate
    text = replace(read_fixture("m6_gradient_sphere"), "order=e1:h,e3:t,e2:h,e4:t", "order=e1:h,e2:h,e3:t,e4:t");
    CHECK_FALSE(check_text(text).ok());
    // wrong class
    text = replace(read_fixture("m3_figure_eight"), "id=e1 tail=x head=x cls=ms", "id=e1 tail=x head=x cls=ss");
    CHECK(check_text(text).has(ViolationCode::DirectionViolation));
}

TEST_CASE("walk inconsistencies") {
    // side used twice
    auto text = replace(read_fixture("m6_gradient_sphere"), "e4:R:-,e2:R:-", "e4:L:-,e2:R:-");
    CHECK(check_text(text).has(ViolationCode::WalkInconsistency));
    // corner joining separatrices that do not meet
    text = replace(read_fixture("m6_gradient_sphere"), "e3:R:-,e1:R:-,e1:L:+,e4:L:+", "e1:R:-,e3:R:-,e1:L:+,e4:L:+");
    CHECK(check_text(text).has(ViolationCode::WalkInconsistency));
    // point atom missing
    text = replace(read_fixture("m3_figure_eight"), "walks=e1:L:+|@point:c1", "walks=e1:L:+|@point:c2");
    CHECK(check_text(text).has(ViolationCode::WalkInconsistency));
}

TEST_CASE("label checks") {
    // same-sense boundaries make a Reeb annulus
    auto text = replace(read_fixture("m4_two_cycle_torus"), "@cycle:g2.1:+|@cycle:g1.0:-", "@cycle:g2.1:-|@cycle:g1.0:-");
    auto rep = check_text(text);
    CHECK_FALSE(rep.ok());
    CHECK((rep.has(ViolationCode::LabelMismatch) || rep.has(ViolationCode::OrientabilityMismatch)));
    // a flow box labelled as an annulus
    text = replace(read_fixture("m6_gradient_sphere"), "id=U1 label=D", "id=U1 label=A+");
    CHECK(check_text(text).has(ViolationCode::LabelMismatch));
    // source and sink cannot bound a periodic annulus
    text = replace(read_fixture("m1_ns_sphere"), "label=A+", "label=A");
    CHECK(check_text(text).has(ViolationCode::LabelMismatch));
    // periodic pieces cannot sit between a source and a center
    text = replace(read_fixture("m3_figure_eight"), "walks=e1:L:+|@point:c1", "walks=e1:L:+|@point:c1|@point:c2");
    CHECK_FALSE(check_text(text).ok());
}

TEST_CASE("euler and orientability mismatches") {
    auto text = replace(read_fixture("m6_gradient_sphere"), "genus=0", "genus=1");
    CHECK(check_text(text).has(ViolationCode::EulerMismatch));
    text = replace(read_fixture("m_projective"), "orientable=no genus=1", "orientable=yes genus=0");
    auto rep = check_text(text);
    CHECK(rep.has(ViolationCode::OrientabilityMismatch));
    // reversing one gluing circle of the two-cycle torus gives a Klein bottle
    text = replace(read_fixture("m4_two_cycle_torus"), "@cycle:g2.0:-|@cycle:g1.1:+", "@cycle:g2.0:+|@cycle:g1.1:+");
    text = replace(text, "id=U2 label=A+", "id=U2 label=A-");
    rep = check_text(text);
    CHECK(rep.has(ViolationCode::OrientabilityMismatch));
    text = replace(text, "orientable=yes genus=1", "orientable=no genus=2");
    CHECK_MESSAGE(check_text(text).ok(), check_text(text).to_text());
}

TEST_CASE("empty and disconnected models") {
    CHECK(validate_model(FlowModel{}).has(ViolationCode::EmptyModel));
    auto m = fixture("m1_ns_sphere");
    auto extra = fixture("m1_ns_sphere");
    for (auto& p : extra.points) {
        p.id += "2";
        m.points.push_back(p);
    }
    m.pieces.push_back({"V", PieceLabel::APlus, {}, std::nullopt});
    m.pieces.back().walks = {parse_walk("@point:n2"), parse_walk("@point:s2")};
    m.surface.genus = -1;  // two spheres: chi 4
    auto rep = validate_model(m);
    CHECK(rep.has(ViolationCode::Disconnected));
}

TEST_CASE("validation is deterministic") {
    auto text = replace(read_fixture("m6_gradient_sphere"), "order=e1:h,e3:t,e2:h,e4:t", "order=e1:h,e3:t,e2:h");
    CHECK(check_text(text).to_text() == check_text(text).to_text());
}

TEST_CASE("index sum equals euler characteristic on closed fixtures") {
    for (auto name : kFixtures) {
        auto m = fixture(name);
        if (m.surface.boundary) continue;
        int sum = 0;
        for (const auto& p : m.points) sum += singularity_index(p.kind, p.mult);
        CHECK(sum == m.surface.euler());
    }
}
