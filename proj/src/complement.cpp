#include "ftflow/complement.hpp"

#include <algorithm>
#include <set>

#include "ftflow/assembly.hpp"

namespace ftflow {

using namespace detail;

std::map<std::string, PieceLabel> classify_components(const FlowModel& m) {
    ValidationReport rep;
    Assembly a;
    if (!build_assembly(m, a, rep)) throw ModelError(rep.violations.front().code, rep.violations.front().detail);
    std::map<std::string, PieceLabel> out;
    for (const auto& p : a.pieces) {
        if (p.pseudo()) continue;
        auto d = derive_label(a, p);
        if (!d) throw ModelError(ViolationCode::UnclassifiablePiece, "piece " + p.id + " fits no complement type");
        if (*d != p.label)
            throw ModelError(ViolationCode::LabelMismatch,
                             "piece " + p.id + " is labelled " + to_string(p.label) + " but is " + to_string(*d));
        out[p.id] = *d;
    }
    return out;
}

bool detect_reeb(const FlowModel& m, const std::string& piece) {
    Assembly a = assemble(m);
    for (const auto& p : a.pieces) {
        if (p.id != piece || p.pseudo()) continue;
        if ((p.label != PieceLabel::APlus && p.label != PieceLabel::AMinus) || p.comps.size() != 2)
            throw ComplementError("NotAnnularP: piece " + piece + " is not an annular P piece");
        const auto& c0 = p.comps[0];
        const auto& c1 = p.comps[1];
        if (!comp_oriented(a, c0) || !comp_oriented(a, c1)) return false;
        return comp_forward(a, c0) == comp_forward(a, c1);
    }
    throw ComplementError("NotAnnularP: no piece " + piece);
}

namespace {

std::vector<std::string> comp_classes(const Assembly& a, const Comp& c) {
    std::set<std::string> out;
    switch (c.kind) {
        case CompKind::Point: out.insert(a.points[c.ref].id); break;
        case CompKind::CycleSide: out.insert(a.cycles[c.ref].id); break;
        case CompKind::Boundary: out.insert(a.bounds[c.ref].id); break;
        case CompKind::Walk:
            for (int f : trace_walk(a, c.ref)) {
                int s = flag_sep(f);
                out.insert(a.sep_ids[s]);
                for (int v : {a.tail[s], a.head[s]})
                    out.insert(a.is_cycle_vertex(v) ? a.cycles[a.vertex_cycle(v)].id : a.points[v].id);
            }
            break;
    }
    return {out.begin(), out.end()};
}

std::string vertex_class(const Assembly& a, int v) {
    return a.is_cycle_vertex(v) ? a.cycles[a.vertex_cycle(v)].id : a.points[v].id;
}

DssLabel dss_of(const Assembly& a, const APiece& p) {
    DssLabel l;
    switch (p.label) {
        case PieceLabel::T:
        case PieceLabel::K: l.kind = DssLabel::Kind::Empty; break;
        case PieceLabel::M:
            l.kind = DssLabel::Kind::Single;
            l.first = comp_classes(a, p.comps.at(0));
            break;
        case PieceLabel::A: {
            l.kind = DssLabel::Kind::UnorderedPair;
            l.first = comp_classes(a, p.comps.at(0));
            l.second = comp_classes(a, p.comps.at(1));
            if (l.second < l.first) std::swap(l.first, l.second);
            break;
        }
        case PieceLabel::APlus:
        case PieceLabel::AMinus:
            l.kind = DssLabel::Kind::AlphaOmega;
            l.first = comp_classes(a, p.comps.at(0));
            l.second = comp_classes(a, p.comps.at(1));
            break;
        case PieceLabel::D: {
            l.kind = DssLabel::Kind::AlphaOmega;
            auto w = trace_walk(a, p.comps.at(0).ref);
            for (size_t i = 0; i < w.size(); ++i) {
                int arrive = a0(w[(i + w.size() - 1) % w.size()]);
                if (flag_end(arrive) == 0 && flag_end(w[i]) == 0) l.first = {vertex_class(a, a.vertex_of(arrive))};
                if (flag_end(arrive) == 1 && flag_end(w[i]) == 1) l.second = {vertex_class(a, a.vertex_of(arrive))};
            }
            break;
        }
        case PieceLabel::L: {
            l.kind = DssLabel::Kind::AlphaOmega;
            std::set<std::string> all;
            for (const auto& c : p.comps)
                for (auto& x : comp_classes(a, c)) all.insert(x);
            l.first.assign(all.begin(), all.end());
            l.second = l.first;
            break;
        }
    }
    return l;
}

}  // namespace

DualGraph dual_graph(const FlowModel& model) {
    FlowModel m = model;
    m.normalize();
    Assembly a = assemble(m);
    DualGraph g;
    std::vector<int> owner(2 * a.nseps(), -1);
    for (size_t i = 0; i < a.pieces.size(); ++i) {
        const auto& p = a.pieces[i];
        if (p.pseudo()) continue;
        g.vertices.push_back({p.id, p.label, dss_of(a, p)});
        for (const auto& c : p.comps)
            if (c.kind == CompKind::Walk)
                for (int f : trace_walk(a, c.ref)) owner[2 * flag_sep(f) + flag_side(f)] = static_cast<int>(i);
    }
    std::set<std::pair<std::string, std::string>> edges;
    for (int s = 0; s < a.nseps(); ++s) {
        if (a.sep_class(s) != SepClass::SsSep) continue;
        int x = owner[2 * s], y = owner[2 * s + 1];
        if (x < 0 || y < 0 || x == y) continue;
        auto u = a.pieces[x].id, v = a.pieces[y].id;
        if (v < u) std::swap(u, v);
        edges.insert({u, v});
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

std::string format_dss(const DssLabel& l) {
    auto set = [](const std::vector<std::string>& v) {
        std::string s = "{";
        for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
        return s + "}";
    };
    switch (l.kind) {
        case DssLabel::Kind::Empty: return "empty";
        case DssLabel::Kind::Single: return set(l.first);
        case DssLabel::Kind::UnorderedPair: return "{" + set(l.first) + "," + set(l.second) + "}";
        case DssLabel::Kind::AlphaOmega: return "(" + set(l.first) + "," + set(l.second) + ")";
    }
    return "";
}

}  // namespace ftflow
