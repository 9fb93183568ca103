#include "ftflow/invariant.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ftflow/analysis.hpp"
#include "ftflow/assembly.hpp"
#include "ftflow/canon.hpp"
#include "ftflow/validate.hpp"

namespace ftflow {

using namespace detail;

const char* to_string(InvariantError::Code c) {
    switch (c) {
        case InvariantError::Code::NotFiniteType: return "NotFiniteType";
        case InvariantError::Code::InconsistentTuple: return "InconsistentTuple";
        case InvariantError::Code::AmbiguousTuple: return "AmbiguousTuple";
    }
    return "?";
}

std::string CanonicalCode::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(2 * bytes.size() + 2);
    auto put = [&](unsigned char c) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 15]);
    };
    put(version);
    for (char c : bytes) put(static_cast<unsigned char>(c));
    return out;
}

namespace {

enum Edge {
    kA0, kA1, kA2, kAt, kUp, kSide, kPair, kOwn, kCompPair, kDepart, kAtPoint,
    kSideWith, kSideAgainst, kBndWith, kBndAgainst, kBndPiece
};

[[noreturn]] void inconsistent(const std::string& why) {
    throw InvariantError(InvariantError::Code::InconsistentTuple, "InconsistentTuple: " + why);
}

ColouredGraph cell_graph(const Assembly& a) {
    ColouredGraph g;
    const int nf = a.nflags();
    for (int f = 0; f < nf; ++f)
        g.add(std::string("f") + (flag_end(f) ? "h" : "t") + (a.sep_class(flag_sep(f)) == SepClass::SsSep ? "s" : "m"));
    for (int f = 0; f < nf; ++f) {
        if (f < a0(f)) g.link(f, a0(f), kA0);
        if (f < a2(f)) g.link(f, a2(f), kA2);
        if (f <= a.a1[f]) g.link(f, a.a1[f], kA1);
    }
    std::vector<int> pt(a.npoints());
    for (int v = 0; v < a.npoints(); ++v)
        pt[v] = g.add("p" + std::string(to_string(a.points[v].kind)) + ":" + std::to_string(a.points[v].mult));
    std::vector<std::array<int, 2>> side(a.cycles.size(), {-1, -1});
    for (size_t c = 0; c < a.cycles.size(); ++c) {
        int cn = g.add(a.cycles[c].two_sided ? "c2" : "c1");
        for (int s = 0; s < a.cycles[c].nsides(); ++s) {
            side[c][s] = g.add("s" + std::string(to_string(a.cycles[c].role[s])));
            g.link(cn, side[c][s], kSide);
        }
    }
    for (int f = 0; f < nf; ++f) {
        int v = a.vertex_of(f);
        if (a.is_cycle_vertex(v))
            g.link(side[a.vertex_cycle(v)][a.vertex_side(v)], f, a.up_flag(f) ? kUp : kAt);
        else
            g.link(pt[v], f, kAt);
    }
    std::vector<int> bnd(a.bounds.size());
    for (size_t b = 0; b < a.bounds.size(); ++b)
        bnd[b] = g.add(a.bounds[b].kind == BoundaryKind::Periodic ? "bper" : "bdia");
    for (const auto& p : a.pieces) {
        std::string c = p.pseudo() ? "u~" : "u" + std::string(to_string(p.label));
        if (p.ld) c += ":" + std::to_string(p.ld->orientable) + ":" + std::to_string(p.ld->genus) + ":" +
                       std::to_string(p.ld->punctures);
        int pp = g.add(c), pm = g.add(c);
        g.link(pp, pm, kPair);
        if (p.pseudo()) {
            g.link(pp, bnd[p.boundary], kBndPiece);
            g.link(pm, bnd[p.boundary], kBndPiece);
        }
        bool ordered = p.label == PieceLabel::APlus || p.label == PieceLabel::AMinus;
        for (size_t j = 0; j < p.comps.size(); ++j) {
            const auto& cm = p.comps[j];
            std::string cc = ordered ? (j == 0 ? "ka" : "kw") : "k";
            int cp = g.add(cc), cn = g.add(cc);
            g.link(cp, pp, kOwn);
            g.link(cn, pm, kOwn);
            g.link(cp, cn, kCompPair);
            switch (cm.kind) {
                case CompKind::Walk:
                    for (int d : trace_walk(a, cm.ref)) {
                        g.link(cp, d, kDepart);
                        g.link(cn, a0(d), kDepart);
                    }
                    break;
                case CompKind::Point:
                    g.link(cp, pt[cm.ref], kAtPoint);
                    g.link(cn, pt[cm.ref], kAtPoint);
                    break;
                case CompKind::CycleSide: {
                    int s = side[cm.ref][cm.side];
                    g.link(cp, s, cm.forward ? kSideWith : kSideAgainst);
                    g.link(cn, s, cm.forward ? kSideAgainst : kSideWith);
                    break;
                }
                case CompKind::Boundary:
                    g.link(cp, bnd[cm.ref], cm.forward ? kBndWith : kBndAgainst);
                    g.link(cn, bnd[cm.ref], cm.forward ? kBndAgainst : kBndWith);
                    break;
            }
        }
    }
    return g;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

SingularPoint point_from_vertex(const GraphVertex& v) {
    auto parts = split(v.kind, ':');
    if (parts.empty()) inconsistent("vertex " + v.id + " has no kind");
    auto k = point_kind_from(parts[0]);
    if (!k) inconsistent("vertex " + v.id + " has unknown kind " + v.kind);
    SingularPoint p;
    p.id = v.id;
    p.kind = *k;
    p.mult = parts.size() > 1 ? std::stoi(parts[1]) : 0;
    return p;
}

}  // namespace

InvariantTuple compute_invariant(const FlowModel& model) {
    if (!is_finite_type(model))
        throw InvariantError(InvariantError::Code::NotFiniteType, "NotFiniteType: model has a locally dense piece");
    FlowModel m = model;
    m.normalize();
    require_valid(m);
    InvariantTuple t;
    t.g_ss = graph_ss(m);
    t.g_dplus = graph_Dplus(m);
    t.g_dual = dual_graph(m);
    t.surface = m.surface;
    return t;
}

FlowModel reconstruct(const InvariantTuple& t) {
    if (!t.g_dplus.embedding) inconsistent("missing embedding record");
    const auto& emb = *t.g_dplus.embedding;
    FlowModel m;
    m.surface = t.surface;

    // singular set and multi-saddle separatrices from G_D+
    std::set<std::string> cycle_ids;
    for (const auto& c : emb.cycles) cycle_ids.insert(c.id);
    for (const auto& v : t.g_dplus.vertices) {
        if (v.kind.rfind("cycle", 0) == 0) {
            if (!cycle_ids.count(v.id)) inconsistent("cycle vertex " + v.id + " has no cyclic-order record");
            continue;
        }
        m.points.push_back(point_from_vertex(v));
    }
    std::set<std::string> point_ids;
    for (const auto& p : m.points) point_ids.insert(p.id);
    m.cycles = emb.cycles;
    m.boundary = emb.boundary;
    m.rotations = emb.rotations;

    auto attach = [&](const std::string& sep, const std::string& v, bool tail) -> Attachment {
        if (point_ids.count(v)) return {v, -1};
        const auto* c = m.cycle(v);
        if (!c) inconsistent("separatrix " + sep + " ends at unknown vertex " + v);
        for (int s = 0; s < static_cast<int>(c->sides.size()); ++s) {
            bool role_ok = tail ? c->sides[s].role == CycleRole::Repelling : c->sides[s].role == CycleRole::Attracting;
            for (const auto& e : c->sides[s].ends)
                if (e.sep == sep && role_ok) return {v, s};
        }
        inconsistent("separatrix " + sep + " is not listed on cycle " + v);
    };
    for (const auto& e : t.g_dplus.edges) {
        if (e.ends.size() != 2) inconsistent("hyper-edge " + e.id + " cannot be realized");
        for (const auto& x : e.ends)
            if (!point_ids.count(x)) inconsistent("edge " + e.id + " names missing vertex " + x);
        m.seps.push_back({e.id, {e.ends[0], -1}, {e.ends[1], -1}, SepClass::MultiSaddle});
    }

    // ss-separatrices from G_ss and their true endpoints
    std::set<std::string> ss_vertices;
    for (const auto& v : t.g_ss.vertices) ss_vertices.insert(v.id);
    for (const auto& e : t.g_ss.edges) {
        for (const auto& x : e.ends)
            if (!ss_vertices.count(x)) inconsistent("ss-edge " + e.id + " names missing vertex " + x);
        auto it = t.g_ss.edge_labels.find(e.id);
        if (it == t.g_ss.edge_labels.end()) inconsistent("ss-edge " + e.id + " has no endpoint label");
        m.seps.push_back({e.id, attach(e.id, it->second.first, true), attach(e.id, it->second.second, false),
                          SepClass::SsSep});
    }

    // centers appear only as point atoms of pieces
    std::set<std::string> known = point_ids;
    known.insert(cycle_ids.begin(), cycle_ids.end());
    for (const auto& b : m.boundary) known.insert(b.id);
    for (const auto& s : m.seps) known.insert(s.id);
    std::set<std::string> in_labels;
    for (const auto& v : t.g_dual.vertices)
        for (const auto* side : {&v.dss.first, &v.dss.second}) in_labels.insert(side->begin(), side->end());
    for (const auto& [piece, walks] : emb.walks)
        for (const auto& w : walks)
            if (w.atom && w.atom->kind == AtomKind::Point && !known.count(w.atom->id)) {
                if (!in_labels.count(w.atom->id)) inconsistent("point " + w.atom->id + " of piece " + piece + " is unlabelled");
                m.points.push_back({w.atom->id, PointKind::Center, 0});
                known.insert(w.atom->id);
            }
    for (const auto& id : in_labels)
        if (!known.count(id)) inconsistent("boundary label names missing class " + id);

    // pieces and their gluing
    std::set<std::string> piece_ids;
    for (const auto& v : t.g_dual.vertices) {
        auto it = emb.walks.find(v.id);
        if (it == emb.walks.end()) inconsistent("piece " + v.id + " has no walk record");
        m.pieces.push_back({v.id, v.label, it->second, std::nullopt});
        piece_ids.insert(v.id);
    }
    for (const auto& [u, w] : t.g_dual.edges)
        if (!piece_ids.count(u) || !piece_ids.count(w)) inconsistent("dual edge names a missing piece");
    m.normalize();

    auto rep = validate_model(m);
    if (!rep.ok()) inconsistent(rep.to_text());
    auto back = compute_invariant(m);
    if (!(back.g_dual == t.g_dual)) inconsistent("boundary labels do not match the glued pieces");
    if (!(back.g_ss == t.g_ss) || !(back.g_dplus == t.g_dplus)) inconsistent("graphs do not match the glued model");
    return m;
}

namespace detail {

std::string structure_bytes(const Assembly& a) {
    return "S" + std::to_string(a.surface.orientable) + ":" + std::to_string(a.surface.genus) + ":" +
           std::to_string(a.surface.boundary) + ";" + canonical_certificate(cell_graph(a));
}

}  // namespace detail

CanonicalCode structure_code(const FlowModel& model) {
    FlowModel m = model;
    m.normalize();
    CanonicalCode code;
    code.bytes = structure_bytes(assemble(m));
    return code;
}

CanonicalCode canonical_code(const FlowModel& m) { return structure_code(reconstruct(compute_invariant(m))); }

bool equivalent(const FlowModel& a, const FlowModel& b) { return canonical_code(a) == canonical_code(b); }

std::string describe(const InvariantTuple& t) {
    std::ostringstream out;
    auto list = [](const std::vector<std::string>& v) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
        return s;
    };
    out << "surface " << surface_name(t.surface) << "\n";
    out << "G_ss vertices " << t.g_ss.vertices.size() << " edges " << t.g_ss.edges.size() << "\n";
    for (const auto& v : t.g_ss.vertices) {
        out << "  vertex " << v.id << " " << v.kind;
        if (!v.members.empty()) out << " [" << list(v.members) << "]";
        auto it = t.g_ss.vertex_labels.find(v.id);
        if (it != t.g_ss.vertex_labels.end())
            for (const auto& s : it->second.seqs) out << (it->second.cyclic ? " (" : " <") << list(s) << (it->second.cyclic ? ")" : ">");
        out << "\n";
    }
    for (const auto& e : t.g_ss.edges) {
        const auto& l = t.g_ss.edge_labels.at(e.id);
        out << "  edge " << e.id << " " << list(e.ends) << " alpha=" << l.first << " omega=" << l.second << "\n";
    }
    out << "G_D+ vertices " << t.g_dplus.vertices.size() << " edges " << t.g_dplus.edges.size() << "\n";
    for (const auto& v : t.g_dplus.vertices) out << "  vertex " << v.id << " " << v.kind << "\n";
    for (const auto& e : t.g_dplus.edges) out << "  edge " << e.id << " " << list(e.ends) << "\n";
    out << "G^ss vertices " << t.g_dual.vertices.size() << " edges " << t.g_dual.edges.size() << "\n";
    for (const auto& v : t.g_dual.vertices)
        out << "  vertex " << v.id << " " << to_string(v.label) << " " << format_dss(v.dss) << "\n";
    for (const auto& [u, w] : t.g_dual.edges) out << "  edge " << u << "," << w << "\n";
    return out.str();
}

}  // namespace ftflow
