#pragma once

// Random presentations of the same flow: renamed ids, rotated cyclic orders,
// swapped cycle sides, and mirror images.

#include <algorithm>
#include <map>
#include <random>
#include <string>

#include "ftflow/model.hpp"

namespace testing {

using namespace ftflow;

inline Side flip(Side s) { return s == Side::L ? Side::R : Side::L; }

inline Walk reverse_walk(const Walk& w, bool swap_sides) {
    Walk r = w;
    if (w.atom) {
        if (w.atom->kind != AtomKind::Point) r.atom->forward = !w.atom->forward;
        return r;
    }
    r.segs.assign(w.segs.rbegin(), w.segs.rend());
    for (auto& s : r.segs) {
        s.forward = !s.forward;
        if (swap_sides) s.side = flip(s.side);
    }
    return r;
}

// Mirror image: every separatrix side is renamed L<->R and every order reversed.
inline FlowModel reflect(const FlowModel& m) {
    FlowModel r = m;
    for (auto& rot : r.rotations) std::reverse(rot.order.begin(), rot.order.end());
    for (auto& c : r.cycles)
        for (auto& s : c.sides)
            for (auto& e : s.ends) e.downstream = flip(e.downstream);
    for (auto& b : r.boundary)
        if (b.kind == BoundaryKind::Diagram) b.walk = reverse_walk(b.walk, true);
    for (auto& p : r.pieces)
        for (auto& w : p.walks) w = reverse_walk(w, true);
    return r;
}

template <class V, class Rng>
void rotate_random(V& v, Rng& rng) {
    if (v.size() < 2) return;
    std::uniform_int_distribution<size_t> d(0, v.size() - 1);
    std::rotate(v.begin(), v.begin() + d(rng), v.end());
}

inline FlowModel relabel(const FlowModel& m, std::mt19937& rng) {
    std::vector<std::string> ids;
    for (const auto& p : m.points) ids.push_back(p.id);
    for (const auto& s : m.seps) ids.push_back(s.id);
    for (const auto& c : m.cycles) ids.push_back(c.id);
    for (const auto& b : m.boundary) ids.push_back(b.id);
    for (const auto& p : m.pieces) ids.push_back(p.id);
    std::vector<int> perm(ids.size());
    for (size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::map<std::string, std::string> to;
    for (size_t i = 0; i < ids.size(); ++i) to[ids[i]] = "n" + std::to_string(perm[i]);
    auto R = [&](const std::string& x) { return to.at(x); };

    // which cycles get their two sides swapped
    std::map<std::string, bool> swap;
    for (const auto& c : m.cycles) swap[c.id] = c.two_sided && (rng() & 1);
    auto S = [&](const std::string& c, int side) { return swap.at(c) ? 1 - side : side; };

    FlowModel r = m;
    for (auto& p : r.points) p.id = R(p.id);
    for (auto& s : r.seps) {
        for (auto* at : {&s.tail, &s.head}) {
            if (at->is_cycle()) at->cycle_side = S(at->id, at->cycle_side);
            at->id = R(at->id);
        }
        s.id = R(s.id);
    }
    for (auto& c : r.cycles) {
        if (swap.at(c.id)) std::swap(c.sides[0], c.sides[1]);
        c.id = R(c.id);
        for (auto& s : c.sides) {
            for (auto& e : s.ends) e.sep = R(e.sep);
            rotate_random(s.ends, rng);
        }
    }
    auto walk = [&](Walk& w) {
        if (w.atom) {
            if (w.atom->kind == AtomKind::CycleSide) w.atom->side = S(w.atom->id, w.atom->side);
            w.atom->id = R(w.atom->id);
            return;
        }
        for (auto& s : w.segs) s.sep = R(s.sep);
        rotate_random(w.segs, rng);
    };
    for (auto& b : r.boundary) {
        b.id = R(b.id);
        if (b.kind == BoundaryKind::Diagram) walk(b.walk);
    }
    for (auto& rot : r.rotations) {
        bool linear = false;
        if (const auto* p = m.point(rot.point)) linear = p->on_boundary();
        rot.point = R(rot.point);
        for (auto& e : rot.order) e.sep = R(e.sep);
        if (!linear) rotate_random(rot.order, rng);
    }
    for (auto& p : r.pieces) {
        p.id = R(p.id);
        for (auto& w : p.walks) walk(w);
        if (p.label != PieceLabel::APlus && p.label != PieceLabel::AMinus) std::shuffle(p.walks.begin(), p.walks.end(), rng);
    }
    std::shuffle(r.points.begin(), r.points.end(), rng);
    std::shuffle(r.seps.begin(), r.seps.end(), rng);
    std::shuffle(r.pieces.begin(), r.pieces.end(), rng);
    return r;
}

inline FlowModel random_presentation(const FlowModel& m, std::mt19937& rng) {
    FlowModel r = relabel(m, rng);
    return (rng() & 1) ? reflect(r) : r;
}

}  // namespace testing
