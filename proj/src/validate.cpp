#include "ftflow/validate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ftflow/assembly.hpp"

namespace ftflow {

const char* to_string(ViolationCode c) {
    switch (c) {
        case ViolationCode::SyntaxError: return "SyntaxError";
        case ViolationCode::DanglingReference: return "DanglingReference";
        case ViolationCode::DegreeMismatch: return "DegreeMismatch";
        case ViolationCode::WalkInconsistency: return "WalkInconsistency";
        case ViolationCode::DirectionViolation: return "DirectionViolation";
        case ViolationCode::EulerMismatch: return "EulerMismatch";
        case ViolationCode::OrientabilityMismatch: return "OrientabilityMismatch";
        case ViolationCode::LabelMismatch: return "LabelMismatch";
        case ViolationCode::UnclassifiablePiece: return "UnclassifiablePiece";
        case ViolationCode::Disconnected: return "Disconnected";
        case ViolationCode::EmptyModel: return "EmptyModel";
    }
    return "?";
}

bool ValidationReport::has(ViolationCode c) const {
    return std::any_of(violations.begin(), violations.end(), [c](const Violation& v) { return v.code == c; });
}

std::string ValidationReport::to_text() const {
    if (ok()) return "valid\n";
    std::ostringstream out;
    for (const auto& v : violations) out << to_string(v.code) << ": " << v.detail << "\n";
    return out.str();
}

namespace detail {

namespace {

using VC = ViolationCode;

bool emits(const Assembly& a, int v) {
    if (a.is_cycle_vertex(v)) return a.cycles[a.vertex_cycle(v)].role[a.vertex_side(v)] == CycleRole::Repelling;
    auto k = a.points[v].kind;
    return k == PointKind::Source || k == PointKind::BSource || k == PointKind::Saddle || k == PointKind::BSaddle;
}

bool absorbs(const Assembly& a, int v) {
    if (a.is_cycle_vertex(v)) return a.cycles[a.vertex_cycle(v)].role[a.vertex_side(v)] == CycleRole::Attracting;
    auto k = a.points[v].kind;
    return k == PointKind::Sink || k == PointKind::BSink || k == PointKind::Saddle || k == PointKind::BSaddle;
}

std::string vname(const Assembly& a, int v) {
    if (!a.is_cycle_vertex(v)) return a.points[v].id;
    return a.cycles[a.vertex_cycle(v)].id + "." + std::to_string(a.vertex_side(v));
}

// Ends around a point in the order given by alternating alpha1/alpha2 from `start`.
std::vector<int> vertex_orbit(const Assembly& a, int start) {
    std::vector<int> seq;
    int cur = start;
    do {
        seq.push_back(cur);
        int n = a.a1[cur];
        if (n < 0) return {};
        cur = a2(n);
        if (seq.size() > static_cast<size_t>(a.nflags())) return {};
    } while (cur != start);
    return seq;
}

int end_code(int f) { return 2 * flag_sep(f) + flag_end(f); }

}  // namespace

bool build_assembly(const FlowModel& m, Assembly& A, ValidationReport& rep) {
    auto add = [&](VC c, const std::string& msg) { rep.violations.push_back({c, msg}); };
    if (m.points.empty() && m.seps.empty() && m.cycles.empty() && m.pieces.empty() && m.boundary.empty()) {
        add(VC::EmptyModel, "model has no cells");
        return false;
    }
    A = Assembly{};
    A.surface = m.surface;
    std::map<std::string, int> pidx, sidx, cidx, bidx;
    std::set<std::string> piece_ids;
    for (const auto& p : m.points)
        if (!pidx.emplace(p.id, static_cast<int>(A.points.size())).second) add(VC::DanglingReference, "duplicate point id " + p.id);
        else A.points.push_back(p);
    for (const auto& c : m.cycles) {
        if (cidx.count(c.id) || pidx.count(c.id)) {
            add(VC::DanglingReference, "duplicate cycle id " + c.id);
            continue;
        }
        cidx[c.id] = static_cast<int>(A.cycles.size());
        ACycle ac;
        ac.id = c.id;
        ac.two_sided = c.two_sided;
        if (static_cast<int>(c.sides.size()) != ac.nsides()) {
            add(VC::DegreeMismatch, "cycle " + c.id + " has wrong number of sides");
            return false;
        }
        for (int s = 0; s < ac.nsides(); ++s) ac.role[s] = c.sides[s].role;
        A.cycles.push_back(ac);
    }
    for (const auto& b : m.boundary)
        if (!bidx.emplace(b.id, static_cast<int>(A.bounds.size())).second) add(VC::DanglingReference, "duplicate boundary id " + b.id);
        else A.bounds.push_back({b.id, b.kind});
    for (const auto& p : m.pieces)
        if (!piece_ids.insert(p.id).second) add(VC::DanglingReference, "duplicate piece id " + p.id);

    auto resolve = [&](const Attachment& at, const std::string& sid) -> int {
        if (!at.is_cycle()) {
            auto it = pidx.find(at.id);
            if (it == pidx.end()) {
                add(VC::DanglingReference, "separatrix " + sid + " refers to unknown point " + at.id);
                return -1;
            }
            return it->second;
        }
        auto it = cidx.find(at.id);
        if (it == cidx.end() || at.cycle_side >= A.cycles[it->second].nsides()) {
            add(VC::DanglingReference, "separatrix " + sid + " refers to unknown cycle side " + at.id);
            return -1;
        }
        return A.cycle_vertex(it->second, at.cycle_side);
    };
    for (const auto& s : m.seps) {
        if (sidx.count(s.id)) {
            add(VC::DanglingReference, "duplicate separatrix id " + s.id);
            continue;
        }
        sidx[s.id] = A.nseps();
        A.sep_ids.push_back(s.id);
        A.tail.push_back(resolve(s.tail, s.id));
        A.head.push_back(resolve(s.head, s.id));
    }
    if (!rep.ok()) return false;

    const int V = A.nvertices();
    std::vector<std::vector<int>> ends_at(V);  // end codes
    for (int s = 0; s < A.nseps(); ++s) {
        ends_at[A.tail[s]].push_back(2 * s);
        ends_at[A.head[s]].push_back(2 * s + 1);
    }

    // direction and class rules
    for (int s = 0; s < A.nseps(); ++s) {
        const auto& id = A.sep_ids[s];
        if (!emits(A, A.tail[s])) add(VC::DirectionViolation, "separatrix " + id + " leaves " + vname(A, A.tail[s]) + " which cannot emit");
        if (!absorbs(A, A.head[s])) add(VC::DirectionViolation, "separatrix " + id + " enters " + vname(A, A.head[s]) + " which cannot absorb");
        if (!A.multi_saddle_vertex(A.tail[s]) && !A.multi_saddle_vertex(A.head[s]))
            add(VC::DirectionViolation, "separatrix " + id + " does not touch a multi-saddle");
        if (A.sep_class(s) != m.seps[s].cls) add(VC::DirectionViolation, "separatrix " + id + " has the wrong class");
    }
    for (int v = 0; v < A.npoints(); ++v) {
        const auto& p = A.points[v];
        int fd = p.fixed_degree();
        int deg = static_cast<int>(ends_at[v].size());
        if (fd >= 0 && fd != deg)
            add(VC::DegreeMismatch, "point " + p.id + " has " + std::to_string(deg) + " ends, expected " + std::to_string(fd));
        if (p.on_boundary() && deg < 2) add(VC::DegreeMismatch, "boundary point " + p.id + " needs two boundary separatrices");
    }

    // cycles
    A.downstream.assign(2 * A.nseps(), -1);
    for (const auto& c : m.cycles) {
        int ci = cidx.at(c.id);
        const auto& ac = A.cycles[ci];
        bool any_limit = false;
        for (int s = 0; s < ac.nsides(); ++s) {
            const auto& side = c.sides[s];
            if (side.role != CycleRole::PeriodicCollar) any_limit = true;
            else if (!side.ends.empty()) add(VC::DirectionViolation, "periodic side of " + c.id + " has separatrix ends");
            int v = A.cycle_vertex(ci, s);
            std::set<int> listed;
            for (const auto& e : side.ends) {
                auto it = sidx.find(e.sep);
                if (it == sidx.end()) {
                    add(VC::DanglingReference, "cycle " + c.id + " lists unknown separatrix " + e.sep);
                    continue;
                }
                int sep = it->second;
                int code = -1;
                if (A.tail[sep] == v) code = 2 * sep;
                else if (A.head[sep] == v) code = 2 * sep + 1;
                if (code < 0 || !listed.insert(code).second) {
                    add(VC::WalkInconsistency, "cycle " + c.id + " lists separatrix " + e.sep + " inconsistently");
                    continue;
                }
                A.downstream[code] = static_cast<int>(e.downstream);
            }
            if (listed.size() != ends_at[v].size())
                add(VC::WalkInconsistency, "cycle side " + c.id + "." + std::to_string(s) + " does not list all its separatrices");
        }
        if (!any_limit) add(VC::DirectionViolation, "cycle " + c.id + " is periodic on every side");
    }

    // rotations
    std::map<int, const Rotation*> rot_of;
    for (const auto& r : m.rotations) {
        auto it = pidx.find(r.point);
        if (it == pidx.end()) {
            add(VC::DanglingReference, "rotation for unknown point " + r.point);
            continue;
        }
        if (!rot_of.emplace(it->second, &r).second) add(VC::WalkInconsistency, "two rotations for point " + r.point);
    }
    for (int v = 0; v < A.npoints(); ++v) {
        const auto& p = A.points[v];
        auto it = rot_of.find(v);
        if (it == rot_of.end()) {
            if (!ends_at[v].empty()) add(VC::DegreeMismatch, "point " + p.id + " has no rotation");
            continue;
        }
        const auto& order = it->second->order;
        std::set<int> seen;
        for (const auto& e : order) {
            auto si = sidx.find(e.sep);
            if (si == sidx.end()) {
                add(VC::DanglingReference, "rotation at " + p.id + " names unknown separatrix " + e.sep);
                continue;
            }
            int code = 2 * si->second + (e.end == End::Head ? 1 : 0);
            int at = e.end == End::Head ? A.head[si->second] : A.tail[si->second];
            if (at != v) add(VC::WalkInconsistency, "rotation at " + p.id + " names an end of " + e.sep + " located elsewhere");
            else if (!seen.insert(code).second) add(VC::WalkInconsistency, "rotation slot collision at " + p.id + " for " + e.sep);
        }
        int fd = p.fixed_degree();
        if (fd >= 0 && static_cast<int>(order.size()) != fd)
            add(VC::DegreeMismatch, "rotation at " + p.id + " has length " + std::to_string(order.size()) + ", expected " + std::to_string(fd));
        else if (order.size() != ends_at[v].size())
            add(VC::DegreeMismatch, "rotation at " + p.id + " does not list every end");
        if (p.multi_saddle() && rep.ok()) {
            size_t n = order.size();
            size_t lim = p.on_boundary() ? n - 1 : n;
            for (size_t i = 0; i < lim; ++i)
                if (order[i].end == order[(i + 1) % n].end) {
                    add(VC::DirectionViolation, "separatrices at " + p.id + " do not alternate in and out");
                    break;
                }
        }
    }
    if (!rep.ok()) return false;

    // walks
    A.a1.assign(A.nflags(), -1);
    std::vector<int> side_use(2 * A.nseps(), 0);
    std::vector<int> point_atoms(A.npoints(), 0), bound_atoms(A.bounds.size(), 0);
    std::vector<int> side_atoms(2 * A.cycles.size(), 0);

    auto read_walk = [&](const Walk& w, const std::string& owner, Comp& out) -> bool {
        if (w.atom) {
            const auto& at = *w.atom;
            out.forward = at.forward;
            switch (at.kind) {
                case AtomKind::Point: {
                    auto it = pidx.find(at.id);
                    if (it == pidx.end()) {
                        add(VC::DanglingReference, owner + " names unknown point " + at.id);
                        return false;
                    }
                    out.kind = CompKind::Point;
                    out.ref = it->second;
                    ++point_atoms[it->second];
                    return true;
                }
                case AtomKind::CycleSide: {
                    auto it = cidx.find(at.id);
                    if (it == cidx.end() || at.side < 0 || at.side >= A.cycles[it->second].nsides()) {
                        add(VC::DanglingReference, owner + " names unknown cycle side " + at.id);
                        return false;
                    }
                    out.kind = CompKind::CycleSide;
                    out.ref = it->second;
                    out.side = at.side;
                    ++side_atoms[2 * it->second + at.side];
                    return true;
                }
                case AtomKind::Boundary: {
                    auto it = bidx.find(at.id);
                    if (it == bidx.end()) {
                        add(VC::DanglingReference, owner + " names unknown boundary " + at.id);
                        return false;
                    }
                    out.kind = CompKind::Boundary;
                    out.ref = it->second;
                    ++bound_atoms[it->second];
                    return true;
                }
            }
        }
        if (w.segs.empty()) {
            add(VC::WalkInconsistency, owner + " has an empty walk");
            return false;
        }
        std::vector<int> dep;
        for (const auto& sg : w.segs) {
            auto it = sidx.find(sg.sep);
            if (it == sidx.end()) {
                add(VC::DanglingReference, owner + " walks along unknown separatrix " + sg.sep);
                return false;
            }
            int s = it->second;
            ++side_use[2 * s + static_cast<int>(sg.side)];
            dep.push_back(flag(s, static_cast<int>(sg.side), sg.forward ? 0 : 1));
        }
        bool good = true;
        for (size_t i = 0; i < dep.size(); ++i) {
            int arrive = a0(dep[i]);
            int depart = dep[(i + 1) % dep.size()];
            if (A.vertex_of(arrive) != A.vertex_of(depart)) {
                add(VC::WalkInconsistency, owner + " jumps between " + vname(A, A.vertex_of(arrive)) + " and " +
                                               vname(A, A.vertex_of(depart)));
                good = false;
                continue;
            }
            if (A.a1[arrive] >= 0 || A.a1[depart] >= 0) {
                add(VC::WalkInconsistency, owner + " reuses a corner at " + vname(A, A.vertex_of(arrive)));
                good = false;
                continue;
            }
            A.a1[arrive] = depart;
            A.a1[depart] = arrive;
        }
        out.kind = CompKind::Walk;
        out.ref = dep.front();
        return good;
    };

    for (const auto& p : m.pieces) {
        APiece ap;
        ap.id = p.id;
        ap.label = p.label;
        ap.ld = p.ld;
        for (const auto& w : p.walks) {
            Comp c;
            if (read_walk(w, "piece " + p.id, c)) ap.comps.push_back(c);
        }
        A.pieces.push_back(ap);
    }
    for (const auto& b : m.boundary) {
        if (b.kind != BoundaryKind::Diagram) continue;
        APiece ap;
        ap.id = b.id;
        ap.boundary = bidx.at(b.id);
        Comp c;
        if (read_walk(b.walk, "boundary " + b.id, c)) {
            if (c.kind != CompKind::Walk) add(VC::WalkInconsistency, "boundary " + b.id + " must be a separatrix walk");
            ap.comps.push_back(c);
        }
        A.pieces.push_back(ap);
    }
    if (!rep.ok()) return false;

    for (int s = 0; s < A.nseps(); ++s)
        for (int side = 0; side < 2; ++side)
            if (side_use[2 * s + side] != 1)
                add(VC::WalkInconsistency, "side " + std::string(side ? "R" : "L") + " of " + A.sep_ids[s] + " is used " +
                                               std::to_string(side_use[2 * s + side]) + " times");
    for (int v = 0; v < A.npoints(); ++v) {
        int want = ends_at[v].empty() ? 1 : 0;
        if (point_atoms[v] != want)
            add(VC::WalkInconsistency, "point " + A.points[v].id + " appears " + std::to_string(point_atoms[v]) +
                                           " times as an isolated boundary component");
    }
    for (size_t c = 0; c < A.cycles.size(); ++c)
        for (int s = 0; s < A.cycles[c].nsides(); ++s) {
            int v = A.cycle_vertex(static_cast<int>(c), s);
            int want = ends_at[v].empty() ? 1 : 0;
            if (side_atoms[2 * c + s] != want)
                add(VC::WalkInconsistency, "cycle side " + vname(A, v) + " is used " + std::to_string(side_atoms[2 * c + s]) +
                                               " times as a piece boundary");
        }
    for (size_t b = 0; b < A.bounds.size(); ++b) {
        int want = A.bounds[b].kind == BoundaryKind::Periodic ? 1 : 0;
        if (bound_atoms[b] != want)
            add(VC::WalkInconsistency, "boundary " + A.bounds[b].id + " is used " + std::to_string(bound_atoms[b]) + " times as an atom");
    }
    if (!rep.ok()) return false;

    // local structure at vertices
    auto bflags = boundary_flags(A);
    std::vector<std::vector<int>> flags_at(V);
    for (int f = 0; f < A.nflags(); ++f) flags_at[A.vertex_of(f)].push_back(f);
    for (int v = 0; v < V; ++v) {
        const auto& fl = flags_at[v];
        if (fl.empty()) continue;
        std::string name = vname(A, v);
        if (A.is_cycle_vertex(v)) {
            for (int f : fl) {
                if (bflags[f]) {
                    add(VC::WalkInconsistency, "boundary walk touches cycle side " + name);
                    break;
                }
                if (A.up_flag(f)) {
                    int g = A.a1[f];
                    if (A.up_flag(g)) {
                        add(VC::WalkInconsistency, "corner at " + name + " disagrees with the flow order of the cycle");
                        break;
                    }
                }
            }
            auto orbit = vertex_orbit(A, fl.front());
            if (orbit.size() * 2 != fl.size()) add(VC::WalkInconsistency, "corners at " + name + " do not form one circle");
            continue;
        }
        const auto& p = A.points[v];
        int nb = 0;
        int bstart = -1;
        for (int f : fl)
            if (bflags[f]) {
                ++nb;
                bstart = f;
            }
        if (!p.on_boundary() && nb) {
            add(VC::WalkInconsistency, "boundary walk passes interior point " + p.id);
            continue;
        }
        if (p.on_boundary() && nb != 2) {
            add(VC::WalkInconsistency, "boundary point " + p.id + " is not on exactly one boundary corner");
            continue;
        }
        auto orbit = vertex_orbit(A, p.on_boundary() ? bstart : fl.front());
        if (orbit.size() * 2 != fl.size()) {
            add(VC::WalkInconsistency, "corners at " + p.id + " do not form one disk");
            continue;
        }
        std::vector<int> seq;
        for (int f : orbit) seq.push_back(end_code(f));
        if (p.on_boundary()) {
            if (!bflags[A.a1[bstart]]) {
                add(VC::WalkInconsistency, "boundary corner at " + p.id + " is malformed");
                continue;
            }
            std::rotate(seq.begin(), seq.begin() + 1, seq.end());
        }
        std::vector<int> declared;
        for (const auto& e : rot_of.at(v)->order)
            declared.push_back(2 * sidx.at(e.sep) + (e.end == End::Head ? 1 : 0));
        auto matches = [&](std::vector<int> s) {
            if (p.on_boundary()) return s == declared;
            for (size_t i = 0; i < s.size(); ++i) {
                if (s == declared) return true;
                std::rotate(s.begin(), s.begin() + 1, s.end());
            }
            return false;
        };
        std::vector<int> rev(seq.rbegin(), seq.rend());
        if (!matches(seq) && !matches(rev)) add(VC::WalkInconsistency, "rotation at " + p.id + " disagrees with the walks");
    }
    return rep.ok();
}

void check_assembly(const Assembly& A, ValidationReport& rep) {
    auto add = [&](VC c, const std::string& msg) { rep.violations.push_back({c, msg}); };
    for (const auto& p : A.pieces) {
        if (p.pseudo()) continue;
        if (p.label == PieceLabel::L && !p.ld) {
            add(VC::LabelMismatch, "piece " + p.id + " is labelled L but has no topology record");
            continue;
        }
        auto d = derive_label(A, p);
        if (!d) add(VC::UnclassifiablePiece, "piece " + p.id + " fits no complement type");
        else if (*d != p.label)
            add(VC::LabelMismatch, "piece " + p.id + " is labelled " + to_string(p.label) + " but is " + to_string(*d));
    }
    int chi = assembly_euler(A);
    if (chi != A.surface.euler())
        add(VC::EulerMismatch, "cells give Euler characteristic " + std::to_string(chi) + ", surface has " +
                                   std::to_string(A.surface.euler()));
    if (static_cast<int>(A.bounds.size()) != A.surface.boundary)
        add(VC::EulerMismatch, "model has " + std::to_string(A.bounds.size()) + " boundary circles, surface has " +
                                   std::to_string(A.surface.boundary));
    if (A.surface.genus < 0 || (!A.surface.orientable && A.surface.genus == 0))
        add(VC::EulerMismatch, "surface record is not a surface");
    bool ori = assembly_orientable(A);
    if (ori != A.surface.orientable)
        add(VC::OrientabilityMismatch, std::string("cells are ") + (ori ? "orientable" : "non-orientable") +
                                           " but the surface is not");
    if (!assembly_connected(A)) add(VC::Disconnected, "cells do not form a connected surface");
}

Assembly assemble(const FlowModel& m) {
    ValidationReport rep;
    Assembly a;
    if (build_assembly(m, a, rep)) check_assembly(a, rep);
    if (!rep.ok()) throw ModelError(rep.violations.front().code, rep.violations.front().detail);
    return a;
}

}  // namespace detail

ValidationReport validate_model(const FlowModel& m) {
    ValidationReport rep;
    detail::Assembly a;
    if (detail::build_assembly(m, a, rep)) detail::check_assembly(a, rep);
    return rep;
}

void require_valid(const FlowModel& m) {
    auto rep = validate_model(m);
    if (!rep.ok()) throw ModelError(rep.violations.front().code, rep.violations.front().detail);
}

SurfaceSpec derived_surface(const FlowModel& m) {
    ValidationReport rep;
    detail::Assembly a;
    if (!detail::build_assembly(m, a, rep)) throw ModelError(rep.violations.front().code, rep.violations.front().detail);
    return detail::assembly_surface(a);
}

}  // namespace ftflow
