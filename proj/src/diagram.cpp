#include "ftflow/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ftflow/assembly.hpp"

namespace ftflow {

using namespace detail;

const GraphVertex* LabelledMultiGraph::vertex(const std::string& id) const {
    for (const auto& v : vertices)
        if (v.id == id) return &v;
    return nullptr;
}

std::vector<std::string> LabelledMultiGraph::isolated_vertices() const {
    std::set<std::string> touched;
    for (const auto& e : edges)
        for (const auto& x : e.ends) touched.insert(x);
    std::vector<std::string> out;
    for (const auto& v : vertices)
        if (!touched.count(v.id)) out.push_back(v.id);
    return out;
}

std::string vertex_kind(const SingularPoint& p) {
    std::string k = to_string(p.kind);
    if (p.multi_saddle()) k += ":" + std::to_string(p.mult);
    return k;
}

namespace {

bool per_or_ld(PieceLabel l) {
    return l == PieceLabel::A || l == PieceLabel::M || l == PieceLabel::T || l == PieceLabel::K || l == PieceLabel::L;
}

std::string vertex_id(const Assembly& a, int v) {
    return a.is_cycle_vertex(v) ? a.cycles[a.vertex_cycle(v)].id : a.points[v].id;
}

void rotate_min(std::vector<std::string>& seq) {
    if (seq.empty()) return;
    auto best = seq;
    for (size_t i = 1; i < seq.size(); ++i) {
        std::rotate(seq.begin(), seq.begin() + 1, seq.end());
        if (seq < best) best = seq;
    }
    seq = best;
}

// Connected components of D; returns component index per point (-1 if not a multi-saddle).
std::vector<int> connection_components(const Assembly& a) {
    std::vector<int> parent(a.npoints());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int s = 0; s < a.nseps(); ++s)
        if (a.sep_class(s) == SepClass::MultiSaddle) parent[find(a.tail[s])] = find(a.head[s]);
    std::vector<int> comp(a.npoints(), -1);
    for (int v = 0; v < a.npoints(); ++v)
        if (a.points[v].multi_saddle()) comp[v] = find(v);
    return comp;
}

}  // namespace

DiagramView build_views(const FlowModel& m) {
    Assembly a = assemble(m);
    DiagramView d;
    std::vector<char> touches_per(a.nseps(), 0);
    for (const auto& p : a.pieces) {
        if (p.pseudo() || !per_or_ld(p.label)) continue;
        for (const auto& c : p.comps)
            if (c.kind == CompKind::Walk)
                for (int f : trace_walk(a, c.ref)) touches_per[flag_sep(f)] = 1;
    }
    for (const auto& p : a.points) {
        d.sing.push_back(p.id);
        if (p.multi_saddle()) d.d_points.push_back(p.id);
        if (p.kind != PointKind::Center) d.dplus_points.push_back(p.id);
    }
    for (const auto& c : a.cycles) {
        d.dplus_cycles.push_back(c.id);
        d.delta_per.push_back(c.id);
    }
    for (int s = 0; s < a.nseps(); ++s) {
        const auto& id = a.sep_ids[s];
        d.dss_seps.push_back(id);
        if (a.sep_class(s) == SepClass::MultiSaddle) {
            d.d_seps.push_back(id);
            (touches_per[s] ? d.delta_p : d.p_sep).push_back(id);
        } else {
            d.p_sep.push_back(id);
        }
    }
    for (const auto& b : a.bounds)
        if (b.kind == BoundaryKind::Periodic) d.boundary_per.push_back(b.id);
    for (auto* v : {&d.d_points, &d.d_seps, &d.dplus_points, &d.dplus_cycles, &d.dss_seps, &d.sing, &d.delta_per,
                    &d.delta_p, &d.p_sep, &d.boundary_per})
        std::sort(v->begin(), v->end());
    return d;
}

LabelledMultiGraph graph_Dplus(const FlowModel& model) {
    FlowModel m = model;
    m.normalize();
    Assembly a = assemble(m);
    LabelledMultiGraph g;
    for (const auto& p : a.points)
        if (p.kind != PointKind::Center) g.vertices.push_back({p.id, vertex_kind(p), {}});
    for (const auto& c : m.cycles) {
        g.vertices.push_back({c.id, c.two_sided ? "cycle:two" : "cycle:one", {}});
        VertexOrder vo;
        for (const auto& side : c.sides) {
            std::vector<std::string> seq;
            for (const auto& e : side.ends) seq.push_back(e.sep);
            vo.seqs.push_back(seq);
        }
        g.vertex_labels[c.id] = vo;
    }
    for (int s = 0; s < a.nseps(); ++s)
        if (a.sep_class(s) == SepClass::MultiSaddle)
            g.edges.push_back({a.sep_ids[s], {vertex_id(a, a.tail[s]), vertex_id(a, a.head[s])}});
    EmbeddingRecord rec;
    rec.rotations = m.rotations;
    rec.cycles = m.cycles;
    rec.boundary = m.boundary;
    for (const auto& p : m.pieces) rec.walks[p.id] = p.walks;
    g.embedding = rec;
    return g;
}

LabelledMultiGraph graph_ss(const FlowModel& model) {
    FlowModel m = model;
    m.normalize();
    Assembly a = assemble(m);
    LabelledMultiGraph g;
    auto comp = connection_components(a);

    // collapsed connections
    std::map<int, std::vector<int>> members;
    for (int v = 0; v < a.npoints(); ++v)
        if (comp[v] >= 0) members[comp[v]].push_back(v);
    std::map<int, std::string> conn_id;
    for (auto& [root, vs] : members) {
        std::vector<std::string> ids;
        for (int v : vs) ids.push_back(a.points[v].id);
        std::sort(ids.begin(), ids.end());
        conn_id[root] = ids.front();
        std::vector<std::string> mem = ids;
        for (int s = 0; s < a.nseps(); ++s)
            if (a.sep_class(s) == SepClass::MultiSaddle && comp[a.tail[s]] == root) mem.push_back(a.sep_ids[s]);
        std::sort(mem.begin(), mem.end());
        g.vertices.push_back({ids.front(), "connection", mem});

        // stub order along the boundary of a thin neighbourhood of the connection
        std::vector<char> seen(a.nflags(), 0);
        VertexOrder vo;
        for (int f = 0; f < a.nflags(); ++f) {
            int v = a.vertex_of(f);
            if (seen[f] || v >= a.npoints() || comp[v] != root) continue;
            std::vector<std::string> seq;
            int cur = f;
            while (!seen[cur]) {
                seen[cur] = 1;
                int x = a.a1[cur];
                seen[x] = 1;
                if (a.sep_class(flag_sep(x)) == SepClass::SsSep) {
                    seq.push_back(a.sep_ids[flag_sep(x)]);
                    cur = a2(x);
                } else {
                    cur = a0(x);
                }
            }
            if (!seq.empty()) {
                rotate_min(seq);
                vo.seqs.push_back(seq);
            }
        }
        std::sort(vo.seqs.begin(), vo.seqs.end());
        g.vertex_labels[ids.front()] = vo;
    }
    auto ss_vertex = [&](int v) { return comp[v] >= 0 && v < a.npoints() ? conn_id[comp[v]] : vertex_id(a, v); };

    for (const auto& p : m.points) {
        if (p.multi_saddle() || p.kind == PointKind::Center) continue;
        g.vertices.push_back({p.id, vertex_kind(p), {}});
        VertexOrder vo;
        vo.cyclic = !p.on_boundary();
        std::vector<std::string> seq;
        if (const auto* r = m.rotation(p.id))
            for (const auto& e : r->order) seq.push_back(e.sep);
        vo.seqs.push_back(seq);
        g.vertex_labels[p.id] = vo;
    }
    for (const auto& c : m.cycles) {
        g.vertices.push_back({c.id, c.two_sided ? "cycle:two" : "cycle:one", {}});
        VertexOrder vo;
        for (const auto& side : c.sides) {
            std::vector<std::string> seq;
            for (const auto& e : side.ends) seq.push_back(e.sep);
            vo.seqs.push_back(seq);
        }
        g.vertex_labels[c.id] = vo;
    }
    for (int s = 0; s < a.nseps(); ++s) {
        if (a.sep_class(s) != SepClass::SsSep) continue;
        g.edges.push_back({a.sep_ids[s], {ss_vertex(a.tail[s]), ss_vertex(a.head[s])}});
        g.edge_labels[a.sep_ids[s]] = {vertex_id(a, a.tail[s]), vertex_id(a, a.head[s])};
    }
    std::sort(g.vertices.begin(), g.vertices.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
    return g;
}

bool multigraph_poset_ok(const LabelledMultiGraph& g) {
    std::set<std::string> ids;
    for (const auto& v : g.vertices)
        if (!ids.insert(v.id).second) return false;
    for (const auto& e : g.edges) {
        if (e.ends.size() != 0 && e.ends.size() != 2) return false;
        std::set<std::string> down(e.ends.begin(), e.ends.end());
        down.insert("#" + e.id);
        if (down.size() > 3) return false;
        for (const auto& x : e.ends)
            if (!ids.count(x)) return false;
    }
    return true;
}

}  // namespace ftflow
