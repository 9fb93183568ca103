#include "ftflow/analysis.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ftflow/assembly.hpp"

namespace ftflow {

using namespace detail;

int OrbitClassPoset::index_of(const std::string& id) const {
    for (size_t i = 0; i < elements.size(); ++i)
        if (elements[i] == id) return static_cast<int>(i);
    return -1;
}

OrbitClassPoset orbit_class_poset(const FlowModel& m) {
    Assembly a = assemble(m);
    OrbitClassPoset P;
    const int np = a.npoints(), nc = static_cast<int>(a.cycles.size()), ns = a.nseps();
    auto point_el = [](int v) { return v; };
    auto cycle_el = [np](int c) { return np + c; };
    auto sep_el = [np, nc](int s) { return np + nc + s; };
    for (const auto& p : a.points) {
        P.elements.push_back(p.id);
        P.kinds.push_back(OrbitClassPoset::Kind::Point);
    }
    for (const auto& c : a.cycles) {
        P.elements.push_back(c.id);
        P.kinds.push_back(OrbitClassPoset::Kind::Cycle);
    }
    for (const auto& s : a.sep_ids) {
        P.elements.push_back(s);
        P.kinds.push_back(OrbitClassPoset::Kind::Sep);
    }
    P.below.resize(P.elements.size());
    auto vertex_el = [&](int v) { return a.is_cycle_vertex(v) ? cycle_el(a.vertex_cycle(v)) : point_el(v); };
    for (int s = 0; s < ns; ++s) {
        std::set<int> b = {vertex_el(a.tail[s]), vertex_el(a.head[s])};
        P.below[sep_el(s)].assign(b.begin(), b.end());
    }
    auto comp_closure = [&](const Comp& c, std::set<int>& out) {
        switch (c.kind) {
            case CompKind::Point: out.insert(point_el(c.ref)); break;
            case CompKind::CycleSide: out.insert(cycle_el(c.ref)); break;
            case CompKind::Boundary: break;
            case CompKind::Walk:
                for (int f : trace_walk(a, c.ref)) {
                    int s = flag_sep(f);
                    out.insert(sep_el(s));
                    out.insert(vertex_el(a.tail[s]));
                    out.insert(vertex_el(a.head[s]));
                }
                break;
        }
    };
    for (const auto& p : a.pieces) {
        if (p.pseudo()) continue;
        std::set<int> b;
        switch (p.label) {
            case PieceLabel::D: {
                auto w = trace_walk(a, p.comps.at(0).ref);
                for (size_t i = 0; i < w.size(); ++i) {
                    int arrive = a0(w[(i + w.size() - 1) % w.size()]);
                    if (flag_end(arrive) == flag_end(w[i])) b.insert(vertex_el(a.vertex_of(arrive)));
                }
                break;
            }
            case PieceLabel::APlus:
            case PieceLabel::AMinus:
            case PieceLabel::L:
                for (const auto& c : p.comps) comp_closure(c, b);
                break;
            default: break;  // periodic orbits are closed
        }
        P.elements.push_back(p.id);
        P.kinds.push_back(OrbitClassPoset::Kind::Piece);
        P.below.push_back({b.begin(), b.end()});
    }
    for (const auto& bc : a.bounds) {
        if (bc.kind != BoundaryKind::Periodic) continue;
        P.elements.push_back(bc.id);
        P.kinds.push_back(OrbitClassPoset::Kind::Boundary);
        P.below.push_back({});
    }
    P.heights.assign(P.elements.size(), -1);
    std::function<int(int)> ht = [&](int x) {
        if (P.heights[x] >= 0) return P.heights[x];
        int h = 0;
        for (int y : P.below[x]) h = std::max(h, ht(y) + 1);
        return P.heights[x] = h;
    };
    for (size_t x = 0; x < P.elements.size(); ++x) ht(static_cast<int>(x));
    return P;
}

int height(const FlowModel& m) {
    auto P = orbit_class_poset(m);
    int h = 0;
    for (int x : P.heights) h = std::max(h, x);
    return h;
}

namespace {

struct Occurrence {
    int piece;
    int comp;
    std::set<int> seps;
    std::set<int> vertices;
    bool one_sided;
};

std::vector<Occurrence> limit_occurrences(const Assembly& a) {
    std::vector<Occurrence> out;
    for (size_t i = 0; i < a.pieces.size(); ++i) {
        const auto& p = a.pieces[i];
        if (p.label != PieceLabel::APlus && p.label != PieceLabel::AMinus) continue;
        for (size_t j = 0; j < p.comps.size(); ++j) {
            const auto& c = p.comps[j];
            if (c.kind != CompKind::Walk) continue;
            Occurrence o{static_cast<int>(i), static_cast<int>(j), {}, {}, false};
            std::set<int> sides;
            for (int f : trace_walk(a, c.ref)) {
                int s = flag_sep(f);
                if (!o.seps.insert(s).second) o.one_sided = true;
                o.vertices.insert(a.tail[s]);
                o.vertices.insert(a.head[s]);
            }
            out.push_back(o);
        }
    }
    return out;
}

std::vector<std::string> names(const Assembly& a, const std::set<int>& seps) {
    std::vector<std::string> out;
    for (int s : seps) out.push_back(a.sep_ids[s]);
    std::sort(out.begin(), out.end());
    return out;
}

bool intersects(const std::set<int>& x, const std::set<int>& y) {
    for (int v : x)
        if (y.count(v)) return true;
    return false;
}

}  // namespace

std::vector<std::vector<std::string>> strict_limit_nonperiodic_circuits(const FlowModel& m) {
    Assembly a = assemble(m);
    auto occ = limit_occurrences(a);
    std::set<std::vector<std::string>> out;
    for (size_t i = 0; i < occ.size(); ++i) {
        bool strict = occ[i].one_sided;
        for (size_t j = 0; j < occ.size() && !strict; ++j)
            if (j != i && intersects(occ[i].vertices, occ[j].vertices)) strict = true;
        if (strict) out.insert(names(a, occ[i].seps));
    }
    return {out.begin(), out.end()};
}

std::vector<std::vector<std::string>> periodic_bordered_circuits(const FlowModel& m) {
    Assembly a = assemble(m);
    auto occ = limit_occurrences(a);
    std::vector<int> owner(2 * a.nseps(), -1);
    for (size_t i = 0; i < a.pieces.size(); ++i)
        for (const auto& c : a.pieces[i].comps)
            if (c.kind == CompKind::Walk)
                for (int f : trace_walk(a, c.ref)) owner[2 * flag_sep(f) + flag_side(f)] = static_cast<int>(i);
    std::set<std::vector<std::string>> out;
    for (const auto& o : occ) {
        for (int s : o.seps)
            for (int side = 0; side < 2; ++side) {
                int p = owner[2 * s + side];
                if (p >= 0 && p != o.piece &&
                    (a.pieces[p].label == PieceLabel::A || a.pieces[p].label == PieceLabel::M))
                    out.insert(names(a, o.seps));
            }
    }
    return {out.begin(), out.end()};
}

bool is_finite_type(const FlowModel& m) {
    return std::none_of(m.pieces.begin(), m.pieces.end(), [](const Piece& p) { return p.label == PieceLabel::L; });
}

bool omega_equals_closure_of_closed(const FlowModel& m) {
    return is_finite_type(m) && strict_limit_nonperiodic_circuits(m).empty();
}

bool poincare_hopf_check(const FlowModel& m) {
    int interior = 0, boundary = 0;
    for (const auto& p : m.points) {
        switch (p.kind) {
            case PointKind::BSink:
            case PointKind::BSource: boundary += 1; break;
            case PointKind::BSaddle: boundary -= p.mult; break;
            default: interior += singularity_index(p.kind, p.mult); break;
        }
    }
    if (m.surface.boundary == 0 && boundary == 0) return interior == m.surface.euler();
    return 2 * interior + boundary == 2 * m.surface.euler();
}

}  // namespace ftflow
