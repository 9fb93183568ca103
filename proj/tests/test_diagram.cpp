#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "ftflow/diagram.hpp"

using namespace ftflow;
using V = std::vector<std::string>;

namespace {

bool contains(const V& v, const std::string& x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

TEST_CASE("views of the gradient sphere") {
    auto d = build_views(fixture("m6_gradient_sphere"));
    CHECK(d.d_points == V{"x"});
    CHECK(d.d_seps.empty());
    CHECK(d.dplus_points == V{"a", "b", "s", "x"});
    CHECK(d.dss_seps == V{"e1", "e2", "e3", "e4"});
    CHECK(d.delta_p.empty());
    CHECK(d.p_sep == V{"e1", "e2", "e3", "e4"});
}

TEST_CASE("figure eight separatrices lie on the boundary of periodic pieces") {
    auto d = build_views(fixture("m3_figure_eight"));
    CHECK(d.d_points == V{"x"});
    CHECK(d.d_seps == V{"e1", "e2"});
    CHECK(d.delta_p == V{"e1", "e2"});
    CHECK(d.p_sep.empty());
    CHECK(d.dplus_points == V{"x"});
}

TEST_CASE("boundary partition covers every orbit class exactly once") {
    for (auto name : {"m1_ns_sphere", "m3_figure_eight", "m5_reeb_annulus", "m6_gradient_sphere", "m8_cherry_torus",
                      "strict_circuit_torus"}) {
        CAPTURE(name);
        auto m = fixture(name);
        auto d = build_views(m);
        V all;
        for (const auto* v : {&d.sing, &d.delta_per, &d.delta_p, &d.p_sep, &d.boundary_per})
            all.insert(all.end(), v->begin(), v->end());
        std::sort(all.begin(), all.end());
        CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
        CHECK(all.size() == m.points.size() + m.cycles.size() + m.seps.size() +
                                std::count_if(m.boundary.begin(), m.boundary.end(),
                                              [](const auto& b) { return b.kind == BoundaryKind::Periodic; }));
    }
}

TEST_CASE("G_D+ of the gradient sphere has no edges") {
    auto g = graph_Dplus(fixture("m6_gradient_sphere"));
    CHECK(g.vertices.size() == 4);
    CHECK(g.edges.empty());
    CHECK(g.isolated_vertices().size() == 4);
    CHECK(g.vertex("x")->kind == "saddle:1");
    CHECK(g.vertex("a")->kind == "source");
    CHECK(multigraph_poset_ok(g));
}

TEST_CASE("isolated vertices of G_D+ are limit sets or saddles with only ss-separatrices") {
    for (auto name : {"m1_ns_sphere", "m3_figure_eight", "m4_two_cycle_torus", "m6_gradient_sphere",
                      "m8_cherry_torus", "strict_circuit_torus"}) {
        CAPTURE(name);
        auto m = fixture(name);
        auto g = graph_Dplus(m);
        CHECK(multigraph_poset_ok(g));
        for (const auto& id : g.isolated_vertices()) {
            if (m.cycle(id)) continue;
            const auto* p = m.point(id);
            REQUIRE(p);
            if (!p->multi_saddle()) continue;
            for (const auto& s : m.seps)
                if (s.tail.id == id || s.head.id == id) CHECK(s.cls == SepClass::SsSep);
        }
        for (const auto& c : m.cycles) CHECK(g.vertex(c.id));
    }
}

TEST_CASE("G_D+ of the figure eight is a vertex with two loops") {
    auto g = graph_Dplus(fixture("m3_figure_eight"));
    REQUIRE(g.vertices.size() == 1);
    REQUIRE(g.edges.size() == 2);
    for (const auto& e : g.edges) CHECK(e.ends == V{"x", "x"});
    CHECK(g.embedding.has_value());
}

TEST_CASE("G_ss collapses connections") {
    auto g = graph_ss(fixture("m8_cherry_torus"));
    const auto* c = g.vertex("x");
    REQUIRE(c);
    CHECK(c->kind == "connection");
    CHECK(c->members == V{"u", "x"});
    CHECK(g.edges.size() == 2);
    CHECK(contains(g.isolated_vertices(), "gam") == false);
    CHECK(g.edge_labels.at("f") == std::pair<std::string, std::string>{"gam", "x"});
    CHECK(multigraph_poset_ok(g));

    auto h = graph_ss(fixture("m6_gradient_sphere"));
    CHECK(h.vertices.size() == 4);
    CHECK(h.edges.size() == 4);
    const auto& vo = h.vertex_labels.at("x");
    REQUIRE(vo.seqs.size() == 1);
    CHECK(vo.seqs[0].size() == 4);
}

TEST_CASE("connection stub order is invariant under rotation reversal of the input") {
    auto m = fixture("m6_gradient_sphere");
    auto g1 = graph_ss(m);
    auto g2 = graph_ss(m);
    CHECK(g1 == g2);
}

TEST_CASE("poset condition rejects hyper-edges") {
    LabelledMultiGraph g;
    g.vertices = {{"a", "sink", {}}, {"b", "source", {}}, {"c", "sink", {}}};
    g.edges = {{"e", {"a", "b", "c"}}};
    CHECK_FALSE(multigraph_poset_ok(g));
    g.edges = {{"e", {"a", "z"}}};
    CHECK_FALSE(multigraph_poset_ok(g));
    g.edges = {{"e", {}}, {"f", {"a", "b"}}};
    CHECK(multigraph_poset_ok(g));
}
