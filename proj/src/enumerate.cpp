#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "ftflow/assembly.hpp"
#include "ftflow/canon.hpp"
#include "ftflow/invariant.hpp"
#include "ftflow/toolkit.hpp"
#include "ftflow/validate.hpp"

namespace ftflow {

using namespace detail;

namespace {

struct VType {
    enum Kind { Center, Sink, Source, Saddle, Cycle } kind = Center;
    int deg = 0;  // sink/source degree, saddle k
    bool two = true;
    CycleRole role[2] = {CycleRole::Attracting, CycleRole::Attracting};
    int d[2] = {0, 0};

    bool point() const { return kind != Cycle; }
    int tails() const {
        switch (kind) {
            case Source: return deg;
            case Saddle: return deg + 1;
            case Cycle: {
                int t = 0;
                for (int s = 0; s < (two ? 2 : 1); ++s)
                    if (role[s] == CycleRole::Repelling) t += d[s];
                return t;
            }
            default: return 0;
        }
    }
    int heads() const {
        switch (kind) {
            case Sink: return deg;
            case Saddle: return deg + 1;
            case Cycle: {
                int t = 0;
                for (int s = 0; s < (two ? 2 : 1); ++s)
                    if (role[s] == CycleRole::Attracting) t += d[s];
                return t;
            }
            default: return 0;
        }
    }
    int index() const {
        switch (kind) {
            case Center:
            case Sink:
            case Source: return 1;
            case Saddle: return -deg;
            default: return 0;
        }
    }
};

std::vector<VType> vertex_types(int max_seps, bool cycles) {
    std::vector<VType> out;
    out.push_back({VType::Center});
    for (int d = 0; d <= max_seps; ++d) out.push_back({VType::Sink, d});
    for (int d = 0; d <= max_seps; ++d) out.push_back({VType::Source, d});
    for (int k = 0; k + 1 <= max_seps; ++k) out.push_back({VType::Saddle, k});
    if (!cycles) return out;
    const CycleRole roles[] = {CycleRole::Attracting, CycleRole::Repelling, CycleRole::PeriodicCollar};
    auto degs = [&](CycleRole r) { return r == CycleRole::PeriodicCollar ? 0 : max_seps; };
    for (int r0 = 0; r0 < 3; ++r0)
        for (int r1 = r0; r1 < 3; ++r1) {
            if (r0 == 2 && r1 == 2) continue;
            for (int d0 = 0; d0 <= degs(roles[r0]); ++d0)
                for (int d1 = 0; d1 <= degs(roles[r1]); ++d1) {
                    if (r0 == r1 && d1 < d0) continue;
                    VType t{VType::Cycle};
                    t.two = true;
                    t.role[0] = roles[r0];
                    t.role[1] = roles[r1];
                    t.d[0] = d0;
                    t.d[1] = d1;
                    out.push_back(t);
                }
        }
    for (int r = 0; r < 2; ++r)
        for (int d = 0; d <= max_seps; ++d) {
            VType t{VType::Cycle};
            t.two = false;
            t.role[0] = roles[r];
            t.d[0] = d;
            out.push_back(t);
        }
    return out;
}

struct Slot {
    int vertex;  // assembly vertex index
    int pos;     // position in the vertex's cyclic order
};

struct Generator {
    Generator(const EnumerationBudget& b, const std::function<void(const FlowModel&)>& e, EnumerationStats& st)
        : budget(b), emit(e), stats(st) {}

    const EnumerationBudget& budget;
    const std::function<void(const FlowModel&)>& emit;
    EnumerationStats& stats;

    std::set<int> chis;
    std::vector<VType> types;

    // current vertex configuration
    std::vector<VType> chosen;
    Assembly base;
    std::vector<std::vector<int>> ends_at;  // per vertex: sep end code (2*s+end) at each position, -1 unfilled
    std::vector<Slot> tails, heads;
    bool full_twists = true;
    // head-side symmetry breaking: rotation of sinks / attracting sides, and
    // order among identical sinks
    std::vector<char> rotation_free;
    std::vector<int> twin_before;  // previous identical sink, or -1
    std::vector<int> touched;
    std::set<std::string>* seen = nullptr;

    bool whitelisted(const SurfaceSpec& s) const {
        return std::find(budget.surfaces.begin(), budget.surfaces.end(), s) != budget.surfaces.end();
    }

    void run() {
        for (const auto& s : budget.surfaces)
            if (s.boundary == 0) chis.insert(s.euler());
        if (chis.empty()) return;
        types = vertex_types(budget.max_seps, budget.max_cycles > 0);
        std::vector<int> pick;
        choose(0, pick, 0, 0, 0, 0);
    }

    void choose(size_t from, std::vector<int>& pick, int npts, int ncyc, int nt, int nh) {
        if (nt == nh) configure(pick);
        for (size_t i = from; i < types.size(); ++i) {
            const auto& t = types[i];
            int p = npts + (t.point() ? 1 : 0), c = ncyc + (t.point() ? 0 : 1);
            if (p > budget.max_points || c > budget.max_cycles) continue;
            if (nt + t.tails() > budget.max_seps || nh + t.heads() > budget.max_seps) continue;
            pick.push_back(static_cast<int>(i));
            choose(i, pick, p, c, nt + t.tails(), nh + t.heads());
            pick.pop_back();
        }
    }

    void configure(const std::vector<int>& pick) {
        if (pick.empty()) {
            empty_model();
            return;
        }
        int chi = 0;
        for (int i : pick) chi += types[i].index();
        if (budget.index_prefilter && !chis.count(chi)) return;
        bool orientable_only = true;
        for (const auto& s : budget.surfaces)
            if (s.boundary == 0 && (s.euler() == chi || !budget.index_prefilter) && !s.orientable)
                orientable_only = false;
        full_twists = !orientable_only;

        chosen.clear();
        for (int i : pick) chosen.push_back(types[i]);
        base = Assembly{};
        int np = 0, nc = 0;
        for (const auto& t : chosen) (t.point() ? np : nc)++;
        int pi = 0, ci = 0;
        base.points.resize(np);
        base.cycles.resize(nc);
        std::vector<int> vertex_of_choice(chosen.size());
        for (size_t i = 0; i < chosen.size(); ++i) {
            const auto& t = chosen[i];
            if (t.point()) {
                SingularPoint p;
                p.id = "p" + std::to_string(pi);
                p.kind = t.kind == VType::Center  ? PointKind::Center
                         : t.kind == VType::Sink   ? PointKind::Sink
                         : t.kind == VType::Source ? PointKind::Source
                                                   : PointKind::Saddle;
                p.mult = t.kind == VType::Saddle ? t.deg : 0;
                base.points[pi] = p;
                vertex_of_choice[i] = pi++;
            } else {
                ACycle c;
                c.id = "g" + std::to_string(ci);
                c.two_sided = t.two;
                c.role[0] = t.role[0];
                c.role[1] = t.role[1];
                base.cycles[ci] = c;
                vertex_of_choice[i] = ci++;
            }
        }
        ends_at.assign(base.nvertices(), {});
        tails.clear();
        heads.clear();
        rotation_free.assign(base.nvertices(), 0);
        twin_before.assign(base.nvertices(), -1);
        touched.assign(base.nvertices(), 0);
        for (size_t i = 0; i < chosen.size(); ++i) {
            const auto& t = chosen[i];
            if (t.kind == VType::Sink) {
                int v = vertex_of_choice[i];
                rotation_free[v] = 1;
                if (i > 0 && pick[i - 1] == pick[i]) twin_before[v] = vertex_of_choice[i - 1];
            }
            if (t.kind == VType::Cycle)
                for (int s = 0; s < (t.two ? 2 : 1); ++s)
                    if (t.role[s] == CycleRole::Attracting) rotation_free[np + 2 * vertex_of_choice[i] + s] = 1;
        }
        for (size_t i = 0; i < chosen.size(); ++i) {
            const auto& t = chosen[i];
            if (t.point()) {
                int v = vertex_of_choice[i];
                int n = t.kind == VType::Saddle ? 2 * t.deg + 2 : t.deg;
                ends_at[v].assign(n, -1);
                for (int k = 0; k < n; ++k) {
                    bool tail = t.kind == VType::Source || (t.kind == VType::Saddle && k % 2 == 0);
                    (tail ? tails : heads).push_back({v, k});
                }
            } else {
                for (int s = 0; s < (t.two ? 2 : 1); ++s) {
                    int v = np + 2 * vertex_of_choice[i] + s;
                    ends_at[v].assign(t.d[s], -1);
                    for (int k = 0; k < t.d[s]; ++k)
                        (t.role[s] == CycleRole::Repelling ? tails : heads).push_back({v, k});
                }
            }
        }
        int n = static_cast<int>(tails.size());
        base.sep_ids.resize(n);
        for (int s = 0; s < n; ++s) base.sep_ids[s] = "s" + std::to_string(s);
        base.tail.assign(n, -1);
        base.head.assign(n, -1);
        std::vector<char> used(n, 0);
        pair_up(0, used);
    }

    bool saddle_vertex(int v) const { return v < base.npoints() && base.points[v].kind == PointKind::Saddle; }

    void pair_up(int i, std::vector<char>& used) {
        const int n = static_cast<int>(tails.size());
        if (i == n) {
            twists();
            return;
        }
        const auto& t = tails[i];
        for (int j = 0; j < n; ++j) {
            if (used[j]) continue;
            const auto& h = heads[j];
            if (!saddle_vertex(t.vertex) && !saddle_vertex(h.vertex)) continue;
            if (!touched[h.vertex]) {
                if (rotation_free[h.vertex] && h.pos != 0) continue;
                if (twin_before[h.vertex] >= 0 && !touched[twin_before[h.vertex]]) continue;
            }
            ++touched[h.vertex];
            used[j] = 1;
            base.tail[i] = t.vertex;
            base.head[i] = h.vertex;
            ends_at[t.vertex][t.pos] = 2 * i;
            ends_at[h.vertex][h.pos] = 2 * i + 1;
            pair_up(i + 1, used);
            used[j] = 0;
            --touched[h.vertex];
        }
    }

    void twists() {
        const int n = base.nseps();
        const int np = base.npoints();
        std::vector<int> free_bits;
        std::vector<int> twist(n, 0);
        if (full_twists) {
            // gauge: fix twists on a spanning forest; cycle sides share one root
            std::vector<int> parent(base.nvertices() + 1);
            std::iota(parent.begin(), parent.end(), 0);
            const int root = base.nvertices();
            auto find = [&](int x) {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
            auto node = [&](int v) { return v < np ? v : root; };
            for (int s = 0; s < n; ++s) {
                int x = find(node(base.tail[s])), y = find(node(base.head[s]));
                if (x != y) parent[x] = y;
                else free_bits.push_back(s);
            }
            for (long mask = 0; mask < (1L << free_bits.size()); ++mask) {
                for (size_t b = 0; b < free_bits.size(); ++b) twist[free_bits[b]] = (mask >> b) & 1;
                build(twist);
            }
            return;
        }
        // orientable: point-to-point separatrices untwisted; one bit per cycle side
        std::vector<int> sides;
        for (int v = np; v < base.nvertices(); ++v)
            if (!ends_at[v].empty()) sides.push_back(v);
        for (long mask = 0; mask < (1L << sides.size()); ++mask) {
            for (int s = 0; s < n; ++s) {
                twist[s] = 0;
                for (size_t b = 0; b < sides.size(); ++b)
                    if (base.tail[s] == sides[b] || base.head[s] == sides[b]) twist[s] = (mask >> b) & 1;
            }
            build(twist);
        }
    }

    // ccw side of a separatrix end
    static int ccw_side(int code, const std::vector<int>& twist) {
        int s = code >> 1, end = code & 1;
        return end == 0 ? 0 : 1 ^ twist[s];
    }

    void build(const std::vector<int>& twist) {
        Assembly a = base;
        const int n = a.nseps();
        a.a1.assign(a.nflags(), -1);
        a.downstream.assign(2 * n, -1);
        for (int v = 0; v < a.nvertices(); ++v) {
            const auto& e = ends_at[v];
            const int d = static_cast<int>(e.size());
            for (int k = 0; k < d; ++k) {
                int x = e[k], y = e[(k + 1) % d];
                int fx = flag(x >> 1, ccw_side(x, twist), x & 1);
                int fy = flag(y >> 1, 1 - ccw_side(y, twist), y & 1);
                if (a.a1[fx] >= 0 || a.a1[fy] >= 0) return;
                a.a1[fx] = fy;
                a.a1[fy] = fx;
                if (a.is_cycle_vertex(v)) a.downstream[x] = ccw_side(x, twist);
            }
        }
        // boundary components of the complement
        std::vector<Comp> comps;
        std::vector<char> seen(a.nflags(), 0);
        for (int f = 0; f < a.nflags(); ++f) {
            if (flag_side(f) != flag_end(f) || seen[f]) continue;
            auto w = trace_walk(a, f);
            if (w.empty()) return;
            for (int x : w) seen[x] = 1;
            comps.push_back({CompKind::Walk, f, 0, true});
        }
        for (int v = 0; v < a.npoints(); ++v)
            if (ends_at[v].empty()) comps.push_back({CompKind::Point, v, 0, true});
        for (size_t c = 0; c < a.cycles.size(); ++c)
            for (int s = 0; s < a.cycles[c].nsides(); ++s)
                if (ends_at[a.cycle_vertex(static_cast<int>(c), s)].empty())
                    comps.push_back({CompKind::CycleSide, static_cast<int>(c), s, true});

        std::vector<APiece> pieces;
        std::vector<Comp> rest;
        int disks = 0;
        for (const auto& c : comps) {
            auto t = comp_type(a, c);
            if (t == CompType::Bad) return;
            if (t == CompType::DWalk) ++disks;
        }
        if (!chis.count(a.npoints() - n + disks)) return;
        for (const auto& c : comps) {
            auto t = comp_type(a, c);
            if (t == CompType::DWalk) {
                APiece p;
                p.label = PieceLabel::D;
                p.comps = {c};
                pieces.push_back(p);
            } else {
                rest.push_back(c);
            }
        }
        ++stats.candidates;
        if (comps.empty()) return;
        std::vector<char> done(rest.size(), 0);
        partition(a, pieces, rest, done);
    }

    bool nonorientable_allowed() const {
        return std::any_of(budget.surfaces.begin(), budget.surfaces.end(), [](const auto& s) { return !s.orientable; });
    }

    void partition(Assembly& a, std::vector<APiece>& pieces, const std::vector<Comp>& rest, std::vector<char>& done) {
        size_t i = 0;
        while (i < rest.size() && done[i]) ++i;
        if (i == rest.size()) {
            finish(a, pieces);
            return;
        }
        done[i] = 1;
        auto ti = comp_type(a, rest[i]);
        if (per_capable(ti) && nonorientable_allowed()) with_senses(a, pieces, rest, done, {rest[i]}, PieceLabel::M);
        for (size_t j = i + 1; j < rest.size(); ++j) {
            if (done[j]) continue;
            done[j] = 1;
            for (auto l : {PieceLabel::APlus, PieceLabel::AMinus}) {
                with_senses(a, pieces, rest, done, {rest[i], rest[j]}, l);
                with_senses(a, pieces, rest, done, {rest[j], rest[i]}, l);
            }
            with_senses(a, pieces, rest, done, {rest[i], rest[j]}, PieceLabel::A);
            done[j] = 0;
        }
        done[i] = 0;
    }

    void with_senses(Assembly& a, std::vector<APiece>& pieces, const std::vector<Comp>& rest, std::vector<char>& done,
                     std::vector<Comp> cs, PieceLabel label) {
        std::vector<size_t> free;
        bool has_walk = false;
        for (size_t k = 0; k < cs.size(); ++k) {
            if (cs[k].kind == CompKind::Walk) has_walk = true;
            if (cs[k].kind == CompKind::CycleSide) free.push_back(k);
        }
        size_t skip = (!has_walk && !free.empty()) ? 1 : 0;
        for (long mask = 0; mask < (1L << (free.size() - skip)); ++mask) {
            for (size_t b = 0; b < free.size(); ++b) cs[free[b]].forward = b < skip ? true : ((mask >> (b - skip)) & 1);
            APiece p;
            p.label = label;
            p.comps = cs;
            auto d = derive_label(a, p);
            if (!d || *d != label) continue;
            pieces.push_back(p);
            partition(a, pieces, rest, done);
            pieces.pop_back();
        }
    }

    void finish(Assembly& a, const std::vector<APiece>& pieces) {
        a.pieces = pieces;
        for (size_t i = 0; i < a.pieces.size(); ++i) a.pieces[i].id = "U" + std::to_string(i);
        if (!assembly_connected(a)) return;
        a.surface = assembly_surface(a);
        if (!whitelisted(a.surface)) return;
        FlowModel m = to_model(a);
        if (!validate_model(m).ok()) return;
        if (seen && !seen->insert(structure_bytes(a)).second) return;
        ++stats.valid;
        emit(m);
    }

    void empty_model() {
        for (auto label : {PieceLabel::T, PieceLabel::K}) {
            FlowModel m;
            m.surface = label == PieceLabel::T ? SurfaceSpec{true, 1, 0} : SurfaceSpec{false, 2, 0};
            if (!whitelisted(m.surface)) continue;
            m.pieces.push_back({"U0", label, {}, std::nullopt});
            ++stats.candidates;
            if (!validate_model(m).ok()) continue;
            if (seen && !seen->insert(structure_code(m).bytes).second) continue;
            ++stats.valid;
            emit(m);
        }
    }
};

}  // namespace

void enumerate_candidates(const EnumerationBudget& budget, const std::function<void(const FlowModel&)>& emit,
                          EnumerationStats* stats) {
    EnumerationStats local;
    Generator g(budget, emit, stats ? *stats : local);
    g.run();
}

std::vector<FlowModel> enumerate_models(const EnumerationBudget& budget, EnumerationStats* stats) {
    std::vector<FlowModel> found;
    std::function<void(const FlowModel&)> keep = [&](const FlowModel& m) { found.push_back(m); };
    EnumerationStats local;
    Generator g(budget, keep, stats ? *stats : local);
    std::set<std::string> seen;
    g.seen = &seen;
    g.run();
    std::map<CanonicalCode, FlowModel> canon;
    for (auto& m : found) canon.emplace(canonical_code(m), std::move(m));
    std::vector<FlowModel> out;
    for (auto& [code, m] : canon) out.push_back(std::move(m));
    if (stats) stats->unique = static_cast<long>(out.size());
    return out;
}

}  // namespace ftflow
