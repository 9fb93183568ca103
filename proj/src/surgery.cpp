#include "ftflow/surgery.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "ftflow/analysis.hpp"
#include "ftflow/assembly.hpp"
#include "ftflow/invariant.hpp"
#include "ftflow/validate.hpp"

namespace ftflow {

using namespace detail;
using Code = SurgeryError::Code;

const char* to_string(SurgeryError::Code c) {
    switch (c) {
        case Code::NotTransversalCore: return "NotTransversalCore";
        case Code::NotPeriodic: return "NotPeriodic";
        case Code::NotInDiagram: return "NotInDiagram";
        case Code::NotEssential: return "NotEssential";
        case Code::NotDirectedCircuit: return "NotDirectedCircuit";
        case Code::UnsupportedTarget: return "UnsupportedTarget";
        case Code::Irreducible: return "Irreducible";
        case Code::NonTermination: return "NonTermination";
    }
    return "?";
}

const char* to_string(SurgeryKind k) {
    switch (k) {
        case SurgeryKind::Ct: return "Ct";
        case SurgeryKind::Co: return "Co";
        case SurgeryKind::Cd: return "Cd";
        case SurgeryKind::Cherry: return "Cherry";
        case SurgeryKind::CherryInverse: return "CherryInverse";
    }
    return "?";
}

int euler_genus(const SurfaceSpec& s) { return 2 - s.euler() - s.boundary; }

namespace {

struct Ids {
    std::set<std::string> used;

    explicit Ids(const FlowModel& m) {
        for (const auto& p : m.points) used.insert(p.id);
        for (const auto& s : m.seps) used.insert(s.id);
        for (const auto& c : m.cycles) used.insert(c.id);
        for (const auto& b : m.boundary) used.insert(b.id);
        for (const auto& p : m.pieces) used.insert(p.id);
    }

    std::string fresh(const std::string& base) {
        if (used.insert(base).second) return base;
        for (int i = 1;; ++i) {
            std::string s = base + "_" + std::to_string(i);
            if (used.insert(s).second) return s;
        }
    }
};

Walk point_walk(const std::string& id) { return Walk{{}, Atom{AtomKind::Point, id, 0, true}}; }

Piece make_piece(const std::string& id, PieceLabel label, std::vector<Walk> walks) {
    Piece p;
    p.id = id;
    p.label = label;
    p.walks = std::move(walks);
    return p;
}

int piece_index(const FlowModel& m, const std::string& id) {
    for (size_t i = 0; i < m.pieces.size(); ++i)
        if (m.pieces[i].id == id) return static_cast<int>(i);
    return -1;
}

struct Where {
    int piece = -1;
    int walk = -1;
};

Where find_atom(const FlowModel& m, AtomKind kind, const std::string& id, int side) {
    for (size_t i = 0; i < m.pieces.size(); ++i)
        for (size_t j = 0; j < m.pieces[i].walks.size(); ++j) {
            const auto& w = m.pieces[i].walks[j];
            if (w.atom && w.atom->kind == kind && w.atom->id == id && (kind != AtomKind::CycleSide || w.atom->side == side))
                return {static_cast<int>(i), static_cast<int>(j)};
        }
    return {};
}

struct Uf {
    std::vector<int> parent;
    int add() {
        parent.push_back(static_cast<int>(parent.size()));
        return parent.back();
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<FlowModel> split_components(const FlowModel& m) {
    Uf uf;
    std::map<std::string, int> node;
    auto N = [&](char kind, const std::string& id) {
        auto key = std::string(1, kind) + id;
        auto it = node.find(key);
        if (it != node.end()) return it->second;
        return node[key] = uf.add();
    };
    auto att = [&](const Attachment& a) { return a.is_cycle() ? N('c', a.id) : N('p', a.id); };
    auto walk_links = [&](int owner, const Walk& w) {
        for (const auto& s : w.segs) uf.unite(owner, N('s', s.sep));
        if (!w.atom) return;
        switch (w.atom->kind) {
            case AtomKind::Point: uf.unite(owner, N('p', w.atom->id)); break;
            case AtomKind::CycleSide: uf.unite(owner, N('c', w.atom->id)); break;
            case AtomKind::Boundary: uf.unite(owner, N('b', w.atom->id)); break;
        }
    };
    for (const auto& p : m.pieces) {
        int x = N('u', p.id);
        for (const auto& w : p.walks) walk_links(x, w);
    }
    for (const auto& p : m.points) N('p', p.id);
    for (const auto& c : m.cycles) N('c', c.id);
    for (const auto& s : m.seps) {
        int x = N('s', s.id);
        uf.unite(x, att(s.tail));
        uf.unite(x, att(s.head));
    }
    for (const auto& b : m.boundary) walk_links(N('b', b.id), b.walk);

    std::map<int, int> comp_of_root;
    std::vector<FlowModel> out;
    auto comp = [&](int x) -> FlowModel& {
        int r = uf.find(x);
        auto it = comp_of_root.find(r);
        if (it == comp_of_root.end()) {
            it = comp_of_root.emplace(r, static_cast<int>(out.size())).first;
            out.emplace_back();
            out.back().surface = m.surface;
        }
        return out[it->second];
    };
    for (const auto& p : m.pieces) comp(N('u', p.id)).pieces.push_back(p);
    for (const auto& p : m.points) comp(N('p', p.id)).points.push_back(p);
    for (const auto& s : m.seps) comp(N('s', s.id)).seps.push_back(s);
    for (const auto& c : m.cycles) comp(N('c', c.id)).cycles.push_back(c);
    for (const auto& b : m.boundary) comp(N('b', b.id)).boundary.push_back(b);
    for (const auto& r : m.rotations) comp(N('p', r.point)).rotations.push_back(r);
    return out;
}

// Recomputes each component's surface and labels from its cells.
std::vector<FlowModel> survey(const FlowModel& r) {
    auto comps = split_components(r);
    for (auto& c : comps) {
        c.surface = derived_surface(c);
        ValidationReport rep;
        Assembly a;
        if (build_assembly(c, a, rep))
            for (size_t i = 0; i < c.pieces.size(); ++i) {
                if (c.pieces[i].label == PieceLabel::L) continue;
                if (auto d = derive_label(a, a.pieces[i])) c.pieces[i].label = *d;
            }
        c.normalize();
    }
    return comps;
}

void require_output(const FlowModel& c) {
    auto rep = validate_model(c);
    if (!rep.ok()) throw std::logic_error("surgery produced an invalid model: " + rep.to_text());
}

std::string fingerprint(const FlowModel& m) { return structure_code(m).hex(); }

SurgeryResult package(SurgeryKind kind, const std::string& target, const FlowModel& before,
                      std::vector<FlowModel> comps) {
    SurgeryResult out;
    out.step.kind = kind;
    out.step.target = target;
    out.step.before = fingerprint(before);
    for (const auto& c : comps) {
        require_output(c);
        out.step.after.push_back(fingerprint(c));
    }
    out.components = std::move(comps);
    return out;
}

}  // namespace

SurgeryResult cut_transversal(const FlowModel& m, const std::string& piece) {
    require_valid(m);
    int pi = piece_index(m, piece);
    if (pi < 0) throw SurgeryError(Code::UnsupportedTarget, "no piece named " + piece);
    const Piece p = m.pieces[pi];
    if (p.label != PieceLabel::APlus && p.label != PieceLabel::AMinus)
        throw SurgeryError(Code::NotTransversalCore, "orbits of piece " + piece + " do not cross a core transversal");
    FlowModel r = m;
    Ids ids(m);
    auto sink = ids.fresh("sink"), source = ids.fresh("source");
    r.points.push_back({sink, PointKind::Sink, 0});
    r.points.push_back({source, PointKind::Source, 0});
    r.pieces.erase(r.pieces.begin() + pi);
    r.pieces.push_back(make_piece(ids.fresh(p.id + "_a"), PieceLabel::APlus, {p.walks[0], point_walk(sink)}));
    r.pieces.push_back(make_piece(ids.fresh(p.id + "_w"), PieceLabel::APlus, {point_walk(source), p.walks[1]}));
    return package(SurgeryKind::Ct, piece, m, survey(r));
}

SurgeryResult cut_periodic(const FlowModel& m, const std::string& circle) {
    require_valid(m);
    FlowModel r = m;
    Ids ids(m);
    auto center = [&] {
        auto c = ids.fresh("c");
        r.points.push_back({c, PointKind::Center, 0});
        return point_walk(c);
    };
    if (int pi = piece_index(m, circle); pi >= 0) {
        const Piece p = m.pieces[pi];
        std::vector<Piece> add;
        switch (p.label) {
            case PieceLabel::A:
                add.push_back(make_piece(ids.fresh(p.id + "_a"), PieceLabel::A, {p.walks[0], center()}));
                add.push_back(make_piece(ids.fresh(p.id + "_b"), PieceLabel::A, {center(), p.walks[1]}));
                break;
            case PieceLabel::T: {
                auto c1 = center();
                add.push_back(make_piece(p.id, PieceLabel::A, {c1, center()}));
                break;
            }
            case PieceLabel::K:
                // a generic orbit of a periodic Klein bottle is two-sided and splits it into two Moebius bands
                add.push_back(make_piece(ids.fresh(p.id + "_a"), PieceLabel::M, {center()}));
                add.push_back(make_piece(ids.fresh(p.id + "_b"), PieceLabel::M, {center()}));
                break;
            case PieceLabel::M:
                add.push_back(make_piece(p.id, PieceLabel::A, {p.walks[0], center()}));
                break;
            default:
                throw SurgeryError(Code::NotPeriodic, "piece " + circle + " is not filled by periodic orbits");
        }
        r.pieces.erase(r.pieces.begin() + pi);
        for (auto& q : add) r.pieces.push_back(q);
    } else if (const LimitCycle* c = m.cycle(circle)) {
        int per = -1;
        for (size_t s = 0; s < c->sides.size(); ++s)
            if (c->sides[s].role == CycleRole::PeriodicCollar) per = static_cast<int>(s);
        if (per < 0) throw SurgeryError(Code::NotPeriodic, "cycle " + circle + " has no periodic side");
        Where w = find_atom(m, AtomKind::CycleSide, circle, per);
        Walk side = r.pieces[w.piece].walks[w.walk];
        r.pieces[w.piece].walks[w.walk] = center();
        r.pieces.push_back(make_piece(ids.fresh("U"), PieceLabel::A, {side, center()}));
    } else if (const BoundaryCircle* b = m.boundary_circle(circle)) {
        if (b->kind != BoundaryKind::Periodic)
            throw SurgeryError(Code::NotPeriodic, "boundary " + circle + " is made of separatrices");
        Where w = find_atom(m, AtomKind::Boundary, circle, 0);
        r.pieces[w.piece].walks[w.walk] = center();
        r.boundary.erase(std::find_if(r.boundary.begin(), r.boundary.end(),
                                      [&](const BoundaryCircle& x) { return x.id == circle; }));
    } else if (m.sep(circle)) {
        throw SurgeryError(Code::NotPeriodic, "separatrix " + circle + " is not a periodic orbit");
    } else {
        throw SurgeryError(Code::UnsupportedTarget, "nothing named " + circle);
    }
    return package(SurgeryKind::Co, circle, m, survey(r));
}

SurgeryResult cut_diagram_loop(const FlowModel& m, const std::vector<std::string>& loop) {
    require_valid(m);
    Assembly A = assemble(m);
    std::map<std::string, int> sidx;
    for (int s = 0; s < A.nseps(); ++s) sidx[A.sep_ids[s]] = s;
    if (loop.empty()) throw SurgeryError(Code::NotInDiagram, "empty loop");
    std::vector<int> L;
    std::string name;
    for (const auto& id : loop) {
        name += (name.empty() ? "" : ",") + id;
        auto it = sidx.find(id);
        if (it == sidx.end()) throw SurgeryError(Code::NotInDiagram, "no separatrix " + id);
        int s = it->second;
        if (std::find(L.begin(), L.end(), s) != L.end()) throw SurgeryError(Code::NotInDiagram, "separatrix " + id + " repeated");
        if (A.sep_class(s) != SepClass::MultiSaddle)
            throw SurgeryError(Code::NotInDiagram, "separatrix " + id + " is an ss-separatrix");
        for (int v : {A.tail[s], A.head[s]})
            if (A.vertex_on_boundary(v))
                throw SurgeryError(Code::UnsupportedTarget, "loop meets the boundary at " + A.points[v].id);
        L.push_back(s);
    }
    std::map<int, std::vector<int>> ends;  // end codes 2*s+end per loop vertex
    for (int s : L) {
        ends[A.tail[s]].push_back(2 * s);
        ends[A.head[s]].push_back(2 * s + 1);
    }
    for (const auto& [v, e] : ends)
        if (e.size() != 2) throw SurgeryError(Code::NotInDiagram, "loop is not a simple closed curve at " + A.points[v].id);
    {
        std::set<int> reached = {L.front()};
        bool grew = true;
        while (grew) {
            grew = false;
            for (int s : L) {
                if (reached.count(s)) continue;
                for (int t : reached)
                    if (A.tail[s] == A.tail[t] || A.tail[s] == A.head[t] || A.head[s] == A.tail[t] || A.head[s] == A.head[t]) {
                        reached.insert(s);
                        grew = true;
                        break;
                    }
            }
        }
        if (reached.size() != L.size()) throw SurgeryError(Code::NotInDiagram, "loop is not connected");
    }

    Ids ids(m);
    const int n = A.nseps(), k = static_cast<int>(L.size()), np = A.npoints();
    const int added = static_cast<int>(ends.size());
    std::vector<int> copy(n, -1);
    for (int i = 0; i < k; ++i) copy[L[i]] = n + i;
    auto nv = [&](int v) { return v < np ? v : v + added; };

    Assembly B = A;
    for (int s = 0; s < n; ++s) {
        B.tail[s] = nv(A.tail[s]);
        B.head[s] = nv(A.head[s]);
    }
    for (int s : L) {
        B.sep_ids.push_back(ids.fresh(A.sep_ids[s] + "_r"));
        B.tail.push_back(B.tail[s]);
        B.head.push_back(B.head[s]);
    }
    B.downstream = A.downstream;
    B.downstream.resize(2 * (n + k), -1);
    // R sides of the loop move to the copies; L sides stay
    auto g = [&](int f) {
        int s = flag_sep(f);
        return copy[s] >= 0 && flag_side(f) == 1 ? flag(copy[s], 1, flag_end(f)) : f;
    };
    B.a1.assign(4 * (n + k), -1);
    for (int f = 0; f < 4 * n; ++f)
        if (A.a1[f] >= 0) B.a1[g(f)] = g(A.a1[f]);
    for (auto& p : B.pieces)
        for (auto& c : p.comps)
            if (c.kind == CompKind::Walk) c.ref = g(c.ref);

    auto set_end = [&](int s, int end, int v) { (end ? B.head : B.tail)[s] = v; };
    auto link = [&](int p, int q) {
        B.a1[p] = q;
        B.a1[q] = p;
    };
    // boundary flag of the copy of s that keeps side `held`
    auto bflag = [&](int s, int held, int end) { return held == 0 ? flag(s, 1, end) : flag(copy[s], 0, end); };
    auto copy_holding = [&](int s, int held) { return held == 0 ? s : copy[s]; };

    int j = 0;
    for (const auto& [x, e] : ends) {
        const int sa = e[0] >> 1, ea = e[0] & 1, sb = e[1] >> 1, eb = e[1] & 1;
        std::set<int> arc;  // end codes on the side of the L flag of the first end
        int cur = flag(sa, 0, ea), h = -1;
        for (;;) {
            h = A.a1[cur];
            if (flag_sep(h) == sb && flag_end(h) == eb) break;
            if (flag_sep(h) == sa && flag_end(h) == ea) throw std::logic_error("corner cycle at a loop vertex is broken");
            arc.insert(2 * flag_sep(h) + flag_end(h));
            cur = a2(h);
        }
        const int sig = flag_side(h);
        const int x2 = np + j++;
        const int deg = A.points[x].fixed_degree();
        B.points[x].kind = PointKind::BSaddle;
        B.points[x].mult = static_cast<int>(arc.size());
        B.points.push_back({ids.fresh(A.points[x].id + "_b"), PointKind::BSaddle, deg - 2 - static_cast<int>(arc.size())});
        for (int s = 0; s < n; ++s) {
            if (copy[s] >= 0) continue;
            for (int end = 0; end < 2; ++end)
                if ((end ? A.head[s] : A.tail[s]) == x && !arc.count(2 * s + end)) set_end(s, end, x2);
        }
        set_end(copy_holding(sa, 0), ea, x);
        set_end(copy_holding(sa, 1), ea, x2);
        set_end(copy_holding(sb, sig), eb, x);
        set_end(copy_holding(sb, 1 - sig), eb, x2);
        link(bflag(sa, 0, ea), bflag(sb, sig, eb));
        link(bflag(sa, 1, ea), bflag(sb, 1 - sig, eb));
    }

    std::set<int> seen;
    for (int s : L)
        for (int dep : {flag(s, 1, 1), flag(copy[s], 0, 0)}) {
            if (seen.count(dep)) continue;
            auto w = trace_walk(B, dep);
            if (w.empty()) throw std::logic_error("new boundary walk does not close");
            for (int f : w) seen.insert(f);
            APiece bp;
            bp.id = ids.fresh("d");
            bp.boundary = static_cast<int>(B.bounds.size());
            bp.comps.push_back(Comp{CompKind::Walk, dep, 0, true});
            B.bounds.push_back({bp.id, BoundaryKind::Diagram});
            B.pieces.push_back(bp);
        }

    auto comps = survey(to_model(B));
    for (const auto& c : comps)
        if (c.surface.orientable && c.surface.genus == 0 && c.surface.boundary == 1)
            throw SurgeryError(Code::NotEssential, "loop " + name + " bounds a disk");
    return package(SurgeryKind::Cd, name, m, std::move(comps));
}

FlowModel cherry_blowup(const FlowModel& m, const std::string& cycle) {
    require_valid(m);
    const LimitCycle* c = m.cycle(cycle);
    if (!c) throw SurgeryError(Code::NotDirectedCircuit, cycle + " is not a limit cycle");
    if (!c->two_sided) throw SurgeryError(Code::UnsupportedTarget, "cycle " + cycle + " is one-sided");
    for (const auto& s : c->sides)
        if (!s.ends.empty()) throw SurgeryError(Code::UnsupportedTarget, "cycle " + cycle + " has separatrix ends");

    FlowModel r = m;
    Where w[2] = {find_atom(m, AtomKind::CycleSide, cycle, 0), find_atom(m, AtomKind::CycleSide, cycle, 1)};
    auto fwd = [&](int s) { return r.pieces[w[s].piece].walks[w[s].walk].atom->forward; };
    if (fwd(0) == fwd(1)) {
        // re-present one neighbour in the opposite local orientation, if it has no separatrix walks
        auto atoms_only = [&](int s) {
            const auto& p = r.pieces[w[s].piece];
            return w[0].piece != w[1].piece &&
                   std::all_of(p.walks.begin(), p.walks.end(), [](const Walk& x) { return x.is_atom(); });
        };
        int flip = atoms_only(1) ? 1 : atoms_only(0) ? 0 : -1;
        if (flip < 0) throw SurgeryError(Code::UnsupportedTarget, "sides of " + cycle + " cannot be oriented coherently");
        for (auto& x : r.pieces[w[flip].piece].walks)
            if (x.atom->kind != AtomKind::Point) x.atom->forward = !x.atom->forward;
    }

    Ids ids(m);
    const auto x = ids.fresh("x"), u = ids.fresh("u"), e = ids.fresh("e"), ctr = ids.fresh("c");
    r.points.push_back({x, PointKind::Saddle, 1});
    r.points.push_back({ctr, PointKind::Center, 0});
    r.seps.push_back({u, {x, -1}, {x, -1}, SepClass::MultiSaddle});
    r.seps.push_back({e, {x, -1}, {x, -1}, SepClass::MultiSaddle});
    r.rotations.push_back({x, {{u, End::Tail}, {e, End::Head}, {e, End::Tail}, {u, End::Head}}});
    for (int s = 0; s < 2; ++s) {
        Walk nw;
        if (fwd(s)) nw.segs = {{u, Side::L, true}, {e, Side::L, true}};
        else nw.segs = {{u, Side::R, false}};
        r.pieces[w[s].piece].walks[w[s].walk] = nw;
    }
    r.pieces.push_back(make_piece(ids.fresh("U"), PieceLabel::A, {Walk{{{e, Side::R, false}}, {}}, point_walk(ctr)}));
    r.cycles.erase(std::find_if(r.cycles.begin(), r.cycles.end(), [&](const LimitCycle& y) { return y.id == cycle; }));
    r.normalize();
    require_output(r);
    return r;
}

FlowModel cherry_inverse(const FlowModel& m, const std::string& saddle) {
    require_valid(m);
    const SingularPoint* x = m.point(saddle);
    if (!x || x->kind != PointKind::Saddle || x->mult != 1)
        throw SurgeryError(Code::UnsupportedTarget, saddle + " is not a simple saddle");
    std::vector<std::string> loops;
    for (const auto& s : m.seps) {
        bool t = !s.tail.is_cycle() && s.tail.id == saddle, h = !s.head.is_cycle() && s.head.id == saddle;
        if (t != h) throw SurgeryError(Code::UnsupportedTarget, "saddle " + saddle + " has a non-loop separatrix");
        if (t) loops.push_back(s.id);
    }
    if (loops.size() != 2) throw SurgeryError(Code::UnsupportedTarget, "saddle " + saddle + " does not carry two loops");

    struct Occ {
        int piece, walk;
    };
    std::map<std::pair<std::string, int>, Occ> occ;
    for (size_t i = 0; i < m.pieces.size(); ++i)
        for (size_t j = 0; j < m.pieces[i].walks.size(); ++j)
            for (const auto& sg : m.pieces[i].walks[j].segs)
                occ[{sg.sep, static_cast<int>(sg.side)}] = {static_cast<int>(i), static_cast<int>(j)};
    auto walk_at = [&](const Occ& o) -> const Walk& { return m.pieces[o.piece].walks[o.walk]; };
    auto disk_side = [&](const std::string& s, int side) {
        const Occ& o = occ.at({s, side});
        const Piece& p = m.pieces[o.piece];
        if (p.label != PieceLabel::A || p.walks.size() != 2 || walk_at(o).segs.size() != 1) return false;
        const Walk& other = p.walks[1 - o.walk];
        return other.atom && other.atom->kind == AtomKind::Point && m.point(other.atom->id)->kind == PointKind::Center;
    };
    std::string u, e;
    int se = -1;
    for (int i = 0; i < 2 && se < 0; ++i)
        for (int side = 0; side < 2 && se < 0; ++side)
            if (disk_side(loops[i], side)) {
                e = loops[i];
                u = loops[1 - i];
                se = side;
            }
    if (se < 0) throw SurgeryError(Code::UnsupportedTarget, "no loop at " + saddle + " bounds a center disk");
    const Occ w2 = occ.at({e, 1 - se});
    const Walk& W2 = walk_at(w2);
    if (W2.segs.size() != 2) throw SurgeryError(Code::UnsupportedTarget, "loops at " + saddle + " do not form a Cherry circuit");
    int su2 = -1;
    for (const auto& sg : W2.segs)
        if (sg.sep == u) su2 = static_cast<int>(sg.side);
    if (su2 < 0) throw SurgeryError(Code::UnsupportedTarget, "loops at " + saddle + " do not form a Cherry circuit");
    const Occ w1 = occ.at({u, 1 - su2});
    if (walk_at(w1).segs.size() != 1) throw SurgeryError(Code::UnsupportedTarget, "loops at " + saddle + " do not form a Cherry circuit");

    auto role = [&](const Occ& o) {
        switch (m.pieces[o.piece].label) {
            case PieceLabel::APlus:
            case PieceLabel::AMinus: return o.walk == 0 ? CycleRole::Repelling : CycleRole::Attracting;
            case PieceLabel::A:
            case PieceLabel::M: return CycleRole::PeriodicCollar;
            default: throw SurgeryError(Code::UnsupportedTarget, "circuit at " + saddle + " borders a disk piece");
        }
    };
    CycleRole r1 = role(w1), r2 = role(w2);
    if (r1 == CycleRole::PeriodicCollar && r2 == CycleRole::PeriodicCollar)
        throw SurgeryError(Code::UnsupportedTarget, "circuit at " + saddle + " is not a limit set");

    const Occ wc = occ.at({e, se});
    const std::string center = m.pieces[wc.piece].walks[1 - wc.walk].atom->id;
    const std::string disk_piece = m.pieces[wc.piece].id;
    Ids ids(m);
    const std::string g = ids.fresh("g");

    FlowModel r = m;
    r.pieces[w1.piece].walks[w1.walk] = Walk{{}, Atom{AtomKind::CycleSide, g, 0, 1 - su2 == 0}};
    r.pieces[w2.piece].walks[w2.walk] = Walk{{}, Atom{AtomKind::CycleSide, g, 1, su2 == 0}};
    LimitCycle lc;
    lc.id = g;
    lc.two_sided = true;
    lc.sides = {CycleSide{r1, {}}, CycleSide{r2, {}}};
    r.cycles.push_back(lc);
    std::erase_if(r.points, [&](const SingularPoint& p) { return p.id == saddle || p.id == center; });
    std::erase_if(r.seps, [&](const Separatrix& s) { return s.id == u || s.id == e; });
    std::erase_if(r.rotations, [&](const Rotation& q) { return q.point == saddle; });
    std::erase_if(r.pieces, [&](const Piece& p) { return p.id == disk_piece; });
    r.normalize();
    require_output(r);
    return r;
}

std::vector<std::vector<std::string>> diagram_loops(const FlowModel& m, size_t limit) {
    Assembly A = assemble(m);
    const int np = A.npoints();
    std::vector<std::vector<std::pair<int, int>>> adj(np);  // (sep, other end)
    for (int s = 0; s < A.nseps(); ++s) {
        if (A.sep_class(s) != SepClass::MultiSaddle) continue;
        int t = A.tail[s], h = A.head[s];
        if (A.vertex_on_boundary(t) || A.vertex_on_boundary(h)) continue;
        adj[t].push_back({s, h});
        if (t != h) adj[h].push_back({s, t});
    }
    std::set<std::vector<std::string>> found;
    std::vector<int> path;
    std::vector<char> on_path(np, 0), used(A.nseps(), 0);
    std::function<void(int, int)> dfs = [&](int start, int v) {
        for (auto [s, w] : adj[v]) {
            if (found.size() >= limit) return;
            if (used[s]) continue;
            if (w == start) {
                std::vector<std::string> cyc;
                for (int t : path) cyc.push_back(A.sep_ids[t]);
                cyc.push_back(A.sep_ids[s]);
                std::sort(cyc.begin(), cyc.end());
                found.insert(cyc);
            } else if (w > start && !on_path[w]) {
                used[s] = 1;
                on_path[w] = 1;
                path.push_back(s);
                dfs(start, w);
                path.pop_back();
                on_path[w] = 0;
                used[s] = 0;
            }
        }
    };
    for (int v = 0; v < np; ++v) {
        on_path[v] = 1;
        dfs(v, v);
        on_path[v] = 0;
    }
    return {found.begin(), found.end()};
}

Reduction reduce_to_spheres(const FlowModel& m) {
    require_valid(m);
    if (!is_finite_type(m)) throw SurgeryError(Code::UnsupportedTarget, "model has a piece with an exceptional limit set");
    const size_t bound = 2 * static_cast<size_t>(m.surface.genus) + m.pieces.size();
    Reduction out;
    std::vector<FlowModel> work = {m};

    auto candidates = [](int phase, const FlowModel& c) {
        std::vector<std::function<SurgeryResult()>> out;
        if (phase == 0) {
            for (const auto& p : c.pieces)
                if (p.label == PieceLabel::A || p.label == PieceLabel::T || p.label == PieceLabel::K || p.label == PieceLabel::M)
                    out.push_back([&c, id = p.id] { return cut_periodic(c, id); });
            for (const auto& y : c.cycles)
                out.push_back([&c, id = y.id] { return cut_periodic(c, id); });
        } else if (phase == 1) {
            for (auto& loop : diagram_loops(c))
                out.push_back([&c, loop] { return cut_diagram_loop(c, loop); });
        } else {
            for (const auto& p : c.pieces)
                if (p.label == PieceLabel::APlus || p.label == PieceLabel::AMinus)
                    out.push_back([&c, id = p.id] { return cut_transversal(c, id); });
        }
        return out;
    };

    for (int phase = 0; phase < 3; ++phase) {
        bool progress = true;
        while (progress) {
            progress = false;
            for (size_t i = 0; i < work.size() && !progress; ++i) {
                const int eg = euler_genus(work[i].surface);
                if (eg == 0) continue;
                for (auto& attempt : candidates(phase, work[i])) {
                    SurgeryResult res;
                    try {
                        res = attempt();
                    } catch (const SurgeryError&) {
                        continue;
                    }
                    if (!std::all_of(res.components.begin(), res.components.end(),
                                     [&](const FlowModel& c) { return euler_genus(c.surface) < eg; }))
                        continue;
                    out.steps.push_back(res.step);
                    work.erase(work.begin() + static_cast<long>(i));
                    work.insert(work.end(), res.components.begin(), res.components.end());
                    progress = true;
                    break;
                }
            }
            if (out.steps.size() > bound)
                throw SurgeryError(Code::NonTermination, "reduction exceeded " + std::to_string(bound) + " steps");
        }
    }
    for (const auto& c : work)
        if (euler_genus(c.surface) != 0)
            throw SurgeryError(Code::Irreducible, "no admissible cut lowers the genus of a " + surface_name(c.surface) + " component");
    out.spheres = std::move(work);
    return out;
}

}  // namespace ftflow
