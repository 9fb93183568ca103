#include "ftflow/assembly.hpp"

#include <algorithm>
#include <numeric>

namespace ftflow::detail {

namespace {

struct ParityUf {
    std::vector<int> parent, parity;
    bool conflict = false;

    explicit ParityUf(int n) : parent(n), parity(n, 0) { std::iota(parent.begin(), parent.end(), 0); }

    std::pair<int, int> find(int x) {
        int p = 0;
        int r = x;
        while (parent[r] != r) {
            p ^= parity[r];
            r = parent[r];
        }
        // path compression with parity
        int cur = x, cp = p;
        while (parent[cur] != cur) {
            int nxt = parent[cur];
            int np = cp ^ parity[cur];
            parent[cur] = r;
            parity[cur] = cp;
            cur = nxt;
            cp = np;
        }
        return {r, p};
    }

    void unite(int a, int b, int rel) {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb) {
            if ((pa ^ pb) != rel) conflict = true;
            return;
        }
        parent[ra] = rb;
        parity[ra] = pa ^ pb ^ rel;
    }
};

struct Uf {
    std::vector<int> parent;
    explicit Uf(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<int> trace_walk(const Assembly& a, int f) {
    std::vector<int> out;
    int cur = f;
    do {
        out.push_back(cur);
        cur = a.a1[a0(cur)];
        if (cur < 0 || static_cast<int>(out.size()) > a.nflags()) return {};
    } while (cur != f);
    return out;
}

CompType comp_type(const Assembly& a, const Comp& c) {
    switch (c.kind) {
        case CompKind::Point:
            switch (a.points[c.ref].kind) {
                case PointKind::Center: return CompType::Center;
                case PointKind::Sink: return CompType::SinkPt;
                case PointKind::Source: return CompType::SourcePt;
                default: return CompType::Bad;
            }
        case CompKind::CycleSide:
            switch (a.cycles[c.ref].role[c.side]) {
                case CycleRole::Attracting: return CompType::AttrSide;
                case CycleRole::Repelling: return CompType::RepSide;
                case CycleRole::PeriodicCollar: return CompType::PerSide;
            }
            return CompType::Bad;
        case CompKind::Boundary:
            return a.bounds[c.ref].kind == BoundaryKind::Periodic ? CompType::PerBoundary : CompType::Bad;
        case CompKind::Walk: break;
    }
    auto w = trace_walk(a, c.ref);
    if (w.empty()) return CompType::Bad;
    int alpha = 0, omega = 0;
    for (size_t i = 0; i < w.size(); ++i) {
        int arrive = a0(w[(i + w.size() - 1) % w.size()]);
        int depart = w[i];
        if (flag_end(arrive) == 0 && flag_end(depart) == 0) ++alpha;
        if (flag_end(arrive) == 1 && flag_end(depart) == 1) ++omega;
    }
    if (alpha == 1 && omega == 1) return CompType::DWalk;
    if (alpha == 0 && omega == 0) return CompType::Circuit;
    return CompType::Bad;
}

bool comp_oriented(const Assembly& a, const Comp& c) {
    if (c.kind == CompKind::Point) return false;
    if (c.kind == CompKind::Walk) return comp_type(a, c) == CompType::Circuit;
    return true;
}

bool comp_forward(const Assembly&, const Comp& c) {
    if (c.kind == CompKind::Walk) return departs_forward(c.ref);
    return c.forward;
}

bool alpha_capable(CompType t) {
    return t == CompType::Circuit || t == CompType::SourcePt || t == CompType::RepSide;
}
bool omega_capable(CompType t) {
    return t == CompType::Circuit || t == CompType::SinkPt || t == CompType::AttrSide;
}
bool per_capable(CompType t) {
    return t == CompType::Circuit || t == CompType::Center || t == CompType::PerSide ||
           t == CompType::PerBoundary;
}

std::optional<PieceLabel> derive_label(const Assembly& a, const APiece& p) {
    const PieceLabel decl = p.label;
    if (decl == PieceLabel::L) {
        if (!p.ld) return std::nullopt;
        return PieceLabel::L;
    }
    const size_t n = p.comps.size();
    if (n == 0) {
        if (decl != PieceLabel::T && decl != PieceLabel::K) return std::nullopt;
        if (a.pieces.size() != 1 || a.npoints() || a.nseps() || !a.cycles.empty() || !a.bounds.empty())
            return std::nullopt;
        return decl;
    }
    if (n == 1) {
        auto t = comp_type(a, p.comps[0]);
        if (t == CompType::DWalk) return PieceLabel::D;
        if (per_capable(t)) return PieceLabel::M;
        return std::nullopt;
    }
    if (n != 2) return std::nullopt;
    auto t0 = comp_type(a, p.comps[0]);
    auto t1 = comp_type(a, p.comps[1]);
    bool both_oriented = comp_oriented(a, p.comps[0]) && comp_oriented(a, p.comps[1]);
    bool same_sense = both_oriented && comp_forward(a, p.comps[0]) == comp_forward(a, p.comps[1]);
    bool p_fit = alpha_capable(t0) && omega_capable(t1);
    bool per_fit = per_capable(t0) && per_capable(t1) && !same_sense;
    auto p_label = same_sense ? PieceLabel::AMinus : PieceLabel::APlus;
    if (decl == PieceLabel::A) {
        if (per_fit) return PieceLabel::A;
        if (p_fit) return p_label;
        return std::nullopt;
    }
    if (p_fit) return p_label;
    if (per_fit) return PieceLabel::A;
    return std::nullopt;
}

std::vector<char> boundary_flags(const Assembly& a) {
    std::vector<char> out(a.nflags(), 0);
    for (const auto& p : a.pieces) {
        if (!p.pseudo()) continue;
        for (const auto& c : p.comps)
            if (c.kind == CompKind::Walk)
                for (int f : trace_walk(a, c.ref)) {
                    out[f] = 1;
                    out[a0(f)] = 1;
                }
    }
    return out;
}

bool assembly_orientable(const Assembly& a) {
    const int F = a.nflags();
    const int P = static_cast<int>(a.pieces.size());
    const int C = static_cast<int>(a.cycles.size());
    ParityUf uf(F + P + 2 * C);
    auto side_node = [&](int c, int s) { return F + P + 2 * c + s; };
    for (int f = 0; f < F; ++f) {
        uf.unite(f, a0(f), 1);
        uf.unite(f, a2(f), 1);
        if (a.a1[f] >= 0) uf.unite(f, a.a1[f], 1);
    }
    for (int i = 0; i < P; ++i) {
        const auto& p = a.pieces[i];
        if (p.label == PieceLabel::M || p.label == PieceLabel::K) return false;
        if (p.label == PieceLabel::L && p.ld && !p.ld->orientable) return false;
        for (const auto& c : p.comps) {
            if (c.kind == CompKind::Walk) uf.unite(F + i, c.ref, 0);
            if (c.kind == CompKind::CycleSide) uf.unite(F + i, side_node(c.ref, c.side), c.forward ? 0 : 1);
        }
    }
    for (int c = 0; c < C; ++c) {
        if (!a.cycles[c].two_sided) return false;
        uf.unite(side_node(c, 0), side_node(c, 1), 1);
    }
    for (int f = 0; f < F; ++f) {
        int v = a.vertex_of(f);
        if (a.is_cycle_vertex(v) && !a.up_flag(f))
            uf.unite(f, side_node(a.vertex_cycle(v), a.vertex_side(v)), 0);
    }
    return !uf.conflict;
}

bool assembly_connected(const Assembly& a) {
    const int V = a.nvertices(), S = a.nseps(), P = static_cast<int>(a.pieces.size());
    const int C = static_cast<int>(a.cycles.size()), B = static_cast<int>(a.bounds.size());
    const int total = V + S + P + C + B;
    if (total == 0) return false;
    Uf uf(total);
    for (int s = 0; s < S; ++s) {
        uf.unite(V + s, a.tail[s]);
        uf.unite(V + s, a.head[s]);
    }
    for (int i = 0; i < P; ++i) {
        const auto& p = a.pieces[i];
        int node = V + S + i;
        if (p.pseudo()) uf.unite(node, V + S + P + C + p.boundary);
        for (const auto& c : p.comps) {
            switch (c.kind) {
                case CompKind::Walk: uf.unite(node, V + flag_sep(c.ref)); break;
                case CompKind::Point: uf.unite(node, c.ref); break;
                case CompKind::CycleSide: uf.unite(node, a.cycle_vertex(c.ref, c.side)); break;
                case CompKind::Boundary: uf.unite(node, V + S + P + C + c.ref); break;
            }
        }
    }
    for (int c = 0; c < C; ++c) {
        uf.unite(V + S + P + c, a.cycle_vertex(c, 0));
        if (a.cycles[c].two_sided) uf.unite(V + S + P + c, a.cycle_vertex(c, 1));
    }
    int root = -1;
    for (int x = 0; x < total; ++x) {
        // unused slot of a one-sided cycle
        if (x >= a.npoints() && x < V && a.vertex_side(x) == 1 && !a.cycles[a.vertex_cycle(x)].two_sided)
            continue;
        int r = uf.find(x);
        if (root < 0) root = r;
        else if (r != root) return false;
    }
    return true;
}

int assembly_euler(const Assembly& a) {
    int chi = a.npoints() - a.nseps();
    for (const auto& p : a.pieces) {
        if (p.pseudo()) continue;
        if (p.label == PieceLabel::D) chi += 1;
        if (p.label == PieceLabel::L && p.ld) chi += p.ld->euler();
    }
    return chi;
}

SurfaceSpec assembly_surface(const Assembly& a) {
    SurfaceSpec s;
    s.orientable = assembly_orientable(a);
    s.boundary = static_cast<int>(a.bounds.size());
    int chi = assembly_euler(a);
    s.genus = s.orientable ? (2 - s.boundary - chi) / 2 : 2 - s.boundary - chi;
    return s;
}

namespace {

Attachment attachment_of(const Assembly& a, int v) {
    if (!a.is_cycle_vertex(v)) return {a.points[v].id, -1};
    return {a.cycles[a.vertex_cycle(v)].id, a.vertex_side(v)};
}

Segment segment_of(const Assembly& a, int f) {
    return {a.sep_ids[flag_sep(f)], flag_side(f) ? Side::R : Side::L, departs_forward(f)};
}

Walk walk_of(const Assembly& a, const Comp& c) {
    Walk w;
    switch (c.kind) {
        case CompKind::Walk:
            for (int f : trace_walk(a, c.ref)) w.segs.push_back(segment_of(a, f));
            break;
        case CompKind::Point: w.atom = Atom{AtomKind::Point, a.points[c.ref].id, 0, true}; break;
        case CompKind::CycleSide: w.atom = Atom{AtomKind::CycleSide, a.cycles[c.ref].id, c.side, c.forward}; break;
        case CompKind::Boundary: w.atom = Atom{AtomKind::Boundary, a.bounds[c.ref].id, 0, c.forward}; break;
    }
    return w;
}

}  // namespace

FlowModel to_model(const Assembly& a) {
    FlowModel m;
    m.surface = a.surface;
    m.points = a.points;
    for (int s = 0; s < a.nseps(); ++s)
        m.seps.push_back({a.sep_ids[s], attachment_of(a, a.tail[s]), attachment_of(a, a.head[s]), a.sep_class(s)});

    // ends grouped by vertex
    std::vector<std::vector<int>> flags_at(a.nvertices());
    for (int f = 0; f < a.nflags(); ++f) flags_at[a.vertex_of(f)].push_back(f);
    auto bflags = boundary_flags(a);

    for (size_t c = 0; c < a.cycles.size(); ++c) {
        LimitCycle lc;
        lc.id = a.cycles[c].id;
        lc.two_sided = a.cycles[c].two_sided;
        for (int s = 0; s < a.cycles[c].nsides(); ++s) {
            CycleSide cs;
            cs.role = a.cycles[c].role[s];
            const auto& fl = flags_at[a.cycle_vertex(static_cast<int>(c), s)];
            if (!fl.empty()) {
                int start = -1;
                for (int f : fl)
                    if (a.up_flag(f)) {
                        start = f;
                        break;
                    }
                int u = start;
                do {
                    cs.ends.push_back({a.sep_ids[flag_sep(u)], flag_side(u) ? Side::R : Side::L});
                    u = a2(a.a1[u]);
                } while (u != start && cs.ends.size() <= fl.size());
            }
            lc.sides.push_back(cs);
        }
        m.cycles.push_back(lc);
    }

    for (int v = 0; v < a.npoints(); ++v) {
        const auto& fl = flags_at[v];
        if (fl.empty()) continue;
        int start = fl.front();
        if (a.points[v].on_boundary())
            for (int f : fl)
                if (bflags[f]) {
                    start = f;
                    break;
                }
        std::vector<RotationEntry> seq;
        int cur = start;
        do {
            seq.push_back({a.sep_ids[flag_sep(cur)], flag_end(cur) ? End::Head : End::Tail});
            cur = a2(a.a1[cur]);
        } while (cur != start && seq.size() <= fl.size());
        if (a.points[v].on_boundary()) std::rotate(seq.begin(), seq.begin() + 1, seq.end());
        std::reverse(seq.begin(), seq.end());
        m.rotations.push_back({a.points[v].id, seq});
    }

    for (size_t b = 0; b < a.bounds.size(); ++b) {
        BoundaryCircle bc;
        bc.id = a.bounds[b].id;
        bc.kind = a.bounds[b].kind;
        m.boundary.push_back(bc);
    }
    for (const auto& p : a.pieces) {
        if (p.pseudo()) {
            m.boundary[p.boundary].walk = walk_of(a, p.comps.at(0));
            continue;
        }
        Piece q;
        q.id = p.id;
        q.label = p.label;
        q.ld = p.ld;
        for (const auto& c : p.comps) q.walks.push_back(walk_of(a, c));
        m.pieces.push_back(q);
    }
    m.normalize();
    return m;
}

}  // namespace ftflow::detail
