#include <algorithm>
#include <map>
#include <string>

#include "ftflow/toolkit.hpp"

namespace ftflow {

namespace {

struct Item {
    std::string id;
    std::string key;  // label, or "boundary"
    bool ordered = false;
    const std::vector<Walk>* walks = nullptr;
    std::vector<Walk> own;  // storage for boundary walks
};

std::vector<Item> items(const FlowModel& m) {
    std::vector<Item> out;
    for (const auto& p : m.pieces) {
        Item it;
        it.id = p.id;
        it.key = to_string(p.label);
        if (p.ld) it.key += ":" + std::to_string(p.ld->orientable) + std::to_string(p.ld->genus) + ":" +
                            std::to_string(p.ld->punctures);
        it.ordered = p.label == PieceLabel::APlus || p.label == PieceLabel::AMinus;
        it.walks = &p.walks;
        out.push_back(std::move(it));
    }
    for (const auto& b : m.boundary) {
        if (b.kind != BoundaryKind::Diagram) continue;
        Item it;
        it.id = "#" + b.id;
        it.key = "boundary";
        it.own = {b.walk};
        out.push_back(std::move(it));
    }
    for (auto& it : out)
        if (!it.walks) it.walks = &it.own;
    return out;
}

Walk turned(const Walk& w, bool reversed) {
    if (!reversed) return w;
    Walk r = w;
    if (w.atom) {
        if (w.atom->kind != AtomKind::Point) r.atom->forward = !w.atom->forward;
        return r;
    }
    r.segs.assign(w.segs.rbegin(), w.segs.rend());
    for (auto& s : r.segs) {
        s.forward = !s.forward;
        s.side = other(s.side);
    }
    return r;
}

struct Maps {
    std::map<std::string, std::string> f, inv;
    bool bind(const std::string& a, const std::string& b) {
        auto it = f.find(a);
        if (it != f.end()) return it->second == b;
        if (inv.count(b)) return false;
        f[a] = b;
        inv[b] = a;
        return true;
    }
};

struct State {
    Maps pt, sep, cyc, bnd, item;
    std::map<std::string, int> swap;                   // per separatrix: sides exchanged
    std::map<std::pair<std::string, int>, int> cside;  // cycle side map
};

class Matcher {
public:
    Matcher(const FlowModel& a, const FlowModel& b) : A(a), B(b), ia(items(a)), ib(items(b)) {}

    bool run() {
        if (!coarse_equal()) return false;
        // most constrained items first
        order.resize(ia.size());
        for (size_t i = 0; i < ia.size(); ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
            return ia[x].walks->size() > ia[y].walks->size();
        });
        return search(State{}, 0);
    }

private:
    const FlowModel& A;
    const FlowModel& B;
    std::vector<Item> ia, ib;
    std::vector<int> order;

    bool coarse_equal() const {
        if (!(A.surface == B.surface)) return false;
        if (A.points.size() != B.points.size() || A.seps.size() != B.seps.size() ||
            A.cycles.size() != B.cycles.size() || A.boundary.size() != B.boundary.size() || ia.size() != ib.size())
            return false;
        auto kinds = [](const FlowModel& m) {
            std::vector<std::string> k;
            for (const auto& p : m.points) k.push_back(std::string(to_string(p.kind)) + std::to_string(p.mult));
            for (const auto& p : m.pieces) k.push_back(std::string("U") + to_string(p.label));
            std::sort(k.begin(), k.end());
            return k;
        };
        return kinds(A) == kinds(B);
    }

    bool bind_point(State& s, const std::string& x, const std::string& y) const {
        const auto* p = A.point(x);
        const auto* q = B.point(y);
        if (!p || !q || p->kind != q->kind || p->mult != q->mult) return false;
        return s.pt.bind(x, y);
    }

    bool bind_cycle_side(State& s, const std::string& g, int side, const std::string& h, int hside) const {
        const auto* c = A.cycle(g);
        const auto* d = B.cycle(h);
        if (!c || !d || c->two_sided != d->two_sided) return false;
        if (c->sides.at(side).role != d->sides.at(hside).role) return false;
        if (!s.cyc.bind(g, h)) return false;
        auto key = std::make_pair(g, side);
        auto it = s.cside.find(key);
        if (it != s.cside.end()) return it->second == hside;
        s.cside[key] = hside;
        // the other side follows
        if (c->two_sided) {
            auto other_key = std::make_pair(g, 1 - side);
            auto jt = s.cside.find(other_key);
            if (jt != s.cside.end() && jt->second != 1 - hside) return false;
            s.cside[other_key] = 1 - hside;
            if (c->sides[1 - side].role != d->sides[1 - hside].role) return false;
        }
        return true;
    }

    bool bind_attachment(State& s, const Attachment& x, const Attachment& y) const {
        if (x.is_cycle() != y.is_cycle()) return false;
        if (!x.is_cycle()) return bind_point(s, x.id, y.id);
        return bind_cycle_side(s, x.id, x.cycle_side, y.id, y.cycle_side);
    }

    bool bind_sep(State& s, const std::string& x, const std::string& y, int swap) const {
        auto it = s.swap.find(x);
        if (it != s.swap.end() && it->second != swap) return false;
        if (s.sep.f.count(x)) return s.sep.f.at(x) == y;
        const auto* e = A.sep(x);
        const auto* f = B.sep(y);
        if (!e || !f || e->cls != f->cls) return false;
        if (!s.sep.bind(x, y)) return false;
        s.swap[x] = swap;
        return bind_attachment(s, e->tail, f->tail) && bind_attachment(s, e->head, f->head);
    }

    bool match_walk(State& s, const Walk& w, const Walk& t, size_t offset, bool reversed) const {
        Walk x = turned(w, reversed);
        if (x.is_atom() != t.is_atom()) return false;
        if (x.atom) {
            const auto& p = *x.atom;
            const auto& q = *t.atom;
            if (p.kind != q.kind) return false;
            switch (p.kind) {
                case AtomKind::Point: return bind_point(s, p.id, q.id);
                case AtomKind::CycleSide: return p.forward == q.forward && bind_cycle_side(s, p.id, p.side, q.id, q.side);
                case AtomKind::Boundary: {
                    const auto* b = A.boundary_circle(p.id);
                    const auto* c = B.boundary_circle(q.id);
                    return b && c && b->kind == c->kind && p.forward == q.forward && s.bnd.bind(p.id, q.id);
                }
            }
            return false;
        }
        const size_t n = x.segs.size();
        if (n != t.segs.size()) return false;
        for (size_t i = 0; i < n; ++i) {
            const auto& p = x.segs[i];
            const auto& q = t.segs[(i + offset) % n];
            if (p.side != q.side || p.forward != q.forward) return false;
            if (!bind_sep(s, p.sep, q.sep, reversed ? 1 : 0)) return false;
        }
        return true;
    }

    bool match_walks(const State& s, const Item& x, const Item& y, bool reversed, size_t k,
                     std::vector<char>& used, int level) const {
        const auto& ws = *x.walks;
        if (k == ws.size()) return search(s, level + 1);
        const auto& ts = *y.walks;
        for (size_t j = 0; j < ts.size(); ++j) {
            if (used[j] || (x.ordered && j != k)) continue;
            size_t n = ws[k].is_atom() ? 1 : std::max<size_t>(1, ts[j].segs.size());
            for (size_t off = 0; off < n; ++off) {
                State t = s;
                if (!match_walk(t, ws[k], ts[j], off, reversed)) continue;
                used[j] = 1;
                bool ok = match_walks(t, x, y, reversed, k + 1, used, level);
                used[j] = 0;
                if (ok) return true;
            }
        }
        return false;
    }

    bool search(const State& s, int level) const {
        if (level == static_cast<int>(order.size())) return finish(s);
        const Item& x = ia[order[level]];
        for (const auto& y : ib) {
            if (y.key != x.key || y.walks->size() != x.walks->size() || s.item.inv.count(y.id)) continue;
            for (int r = 0; r < 2; ++r) {
                State t = s;
                t.item.bind(x.id, y.id);
                if (x.key == "boundary" && !t.bnd.bind(x.id.substr(1), y.id.substr(1))) continue;
                std::vector<char> used(y.walks->size(), 0);
                if (match_walks(t, x, y, r == 1, 0, used, level)) return true;
                if (x.walks->empty()) break;
            }
        }
        return false;
    }

    template <class Seq>
    static bool cyclic_equal(const Seq& x, const Seq& y) {
        if (x.size() != y.size()) return false;
        if (x.empty()) return true;
        for (size_t k = 0; k < y.size(); ++k) {
            bool ok = true;
            for (size_t i = 0; i < x.size() && ok; ++i) ok = x[i] == y[(i + k) % y.size()];
            if (ok) return true;
        }
        return false;
    }

    bool finish(const State& s) const {
        if (s.pt.f.size() != A.points.size() || s.sep.f.size() != A.seps.size() || s.cyc.f.size() != A.cycles.size())
            return false;
        for (const auto& b : A.boundary)
            if (!s.bnd.f.count(b.id)) return false;
        // rotations: all ends at a point see the same local orientation
        for (const auto& r : A.rotations) {
            const auto& img = s.pt.f.at(r.point);
            const auto* tr = B.rotation(img);
            if (!tr) return false;
            std::vector<std::pair<std::string, int>> x, y;
            int sw = -1;
            for (const auto& e : r.order) {
                int w = s.swap.at(e.sep);
                if (sw >= 0 && w != sw) return false;
                sw = w;
                x.push_back({s.sep.f.at(e.sep), static_cast<int>(e.end)});
            }
            for (const auto& e : tr->order) y.push_back({e.sep, static_cast<int>(e.end)});
            if (sw == 1) std::reverse(x.begin(), x.end());
            bool linear = A.point(r.point)->on_boundary();
            if (linear ? x != y : !cyclic_equal(x, y)) return false;
        }
        // cycle ends in flow order with their downstream sides
        for (const auto& c : A.cycles)
            for (int i = 0; i < static_cast<int>(c.sides.size()); ++i) {
                const auto* d = B.cycle(s.cyc.f.at(c.id));
                const auto& ts = d->sides.at(s.cside.at({c.id, i}));
                std::vector<std::pair<std::string, int>> x, y;
                for (const auto& e : c.sides[i].ends) {
                    Side ds = s.swap.at(e.sep) ? other(e.downstream) : e.downstream;
                    x.push_back({s.sep.f.at(e.sep), static_cast<int>(ds)});
                }
                for (const auto& e : ts.ends) y.push_back({e.sep, static_cast<int>(e.downstream)});
                if (!cyclic_equal(x, y)) return false;
            }
        return true;
    }
};

}  // namespace

bool brute_force_equivalent(const FlowModel& a, const FlowModel& b, int max_darts) {
    int darts = 2 * static_cast<int>(a.seps.size() + b.seps.size());
    if (darts > max_darts)
        throw OracleError("BudgetExceeded: " + std::to_string(darts) + " darts exceed the budget of " +
                          std::to_string(max_darts));
    return Matcher(a, b).run();
}

}  // namespace ftflow
