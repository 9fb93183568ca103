#pragma once

// Internal cell structure shared by the validator, the canonical form, the
// enumerator and the surgeries. A separatrix s owns four flags
// 4*s + 2*side + end; alpha0 flips the end, alpha2 flips the side and alpha1
// pairs the two flags meeting at a corner of a walk.

#include <optional>
#include <string>
#include <vector>

#include "ftflow/model.hpp"
#include "ftflow/validate.hpp"

namespace ftflow::detail {

inline int flag(int sep, int side, int end) { return 4 * sep + 2 * side + end; }
inline int flag_sep(int f) { return f >> 2; }
inline int flag_side(int f) { return (f >> 1) & 1; }
inline int flag_end(int f) { return f & 1; }
inline int a0(int f) { return f ^ 1; }
inline int a2(int f) { return f ^ 2; }

enum class CompKind { Walk, Point, CycleSide, Boundary };

struct Comp {
    CompKind kind = CompKind::Walk;
    int ref = -1;      // point, cycle or boundary index; start flag for walks
    int side = 0;      // cycle side
    bool forward = true;
};

enum class CompType { DWalk, Circuit, Bad, Center, SinkPt, SourcePt, AttrSide, RepSide, PerSide, PerBoundary };

struct APiece {
    std::string id;
    PieceLabel label = PieceLabel::D;
    std::vector<Comp> comps;
    std::optional<LdRecord> ld;
    int boundary = -1;  // >= 0 for the pseudo piece of a diagram boundary circle
    bool pseudo() const { return boundary >= 0; }
};

struct ACycle {
    std::string id;
    bool two_sided = true;
    CycleRole role[2] = {CycleRole::Attracting, CycleRole::Attracting};
    int nsides() const { return two_sided ? 2 : 1; }
};

struct ABoundary {
    std::string id;
    BoundaryKind kind = BoundaryKind::Periodic;
};

struct Assembly {
    SurfaceSpec surface;
    std::vector<SingularPoint> points;
    std::vector<std::string> sep_ids;
    std::vector<int> tail, head;  // vertex index per separatrix
    std::vector<ACycle> cycles;
    std::vector<ABoundary> bounds;
    std::vector<APiece> pieces;
    std::vector<int> a1;          // per flag
    std::vector<int> downstream;  // per (2*sep + end): side facing downstream at a cycle side, or -1

    int nseps() const { return static_cast<int>(sep_ids.size()); }
    int nflags() const { return 4 * nseps(); }
    int npoints() const { return static_cast<int>(points.size()); }
    int nvertices() const { return npoints() + 2 * static_cast<int>(cycles.size()); }
    int cycle_vertex(int c, int side) const { return npoints() + 2 * c + side; }
    bool is_cycle_vertex(int v) const { return v >= npoints(); }
    int vertex_cycle(int v) const { return (v - npoints()) / 2; }
    int vertex_side(int v) const { return (v - npoints()) % 2; }
    int vertex_of(int f) const { return flag_end(f) ? head[flag_sep(f)] : tail[flag_sep(f)]; }
    bool multi_saddle_vertex(int v) const { return v < npoints() && points[v].multi_saddle(); }
    SepClass sep_class(int s) const {
        return multi_saddle_vertex(tail[s]) && multi_saddle_vertex(head[s]) ? SepClass::MultiSaddle
                                                                          : SepClass::SsSep;
    }
    bool vertex_on_boundary(int v) const { return v < npoints() && points[v].on_boundary(); }
    // Flag at a cycle-side vertex whose corner leads downstream.
    bool up_flag(int f) const { return downstream[2 * flag_sep(f) + flag_end(f)] == flag_side(f); }
};

// Departure flags of the walk starting at departure flag f, in order.
std::vector<int> trace_walk(const Assembly& a, int f);

// Segment (sep, side, forward) for a departure flag.
inline bool departs_forward(int f) { return flag_end(f) == 0; }

// Classification of a walk or atom component.
CompType comp_type(const Assembly& a, const Comp& c);
bool comp_oriented(const Assembly& a, const Comp& c);
bool comp_forward(const Assembly& a, const Comp& c);
bool alpha_capable(CompType t);
bool omega_capable(CompType t);
bool per_capable(CompType t);

// Label derived from the cell data; nullopt when the piece fits no type.
std::optional<PieceLabel> derive_label(const Assembly& a, const APiece& p);

// Flags on the boundary side of separatrices (owned by pseudo pieces).
std::vector<char> boundary_flags(const Assembly& a);

// Computes orientability from the cells. Returns false on parity conflict or
// non-orientable pieces/cycles.
bool assembly_orientable(const Assembly& a);
bool assembly_connected(const Assembly& a);
int assembly_euler(const Assembly& a);
SurfaceSpec assembly_surface(const Assembly& a);

// Builds the assembly, appending violations to the report. Returns false if
// the structure could not be built far enough to run global checks.
bool build_assembly(const FlowModel& m, Assembly& out, ValidationReport& rep);

// Builds the assembly of a model that must validate; throws ModelError.
Assembly assemble(const FlowModel& m);

// Runs the global checks (labels, Euler, orientability, connectivity).
void check_assembly(const Assembly& a, ValidationReport& rep);

// Rebuilds a FlowModel (walks, rotations, cycle ends) from an assembly.
FlowModel to_model(const Assembly& a);

}  // namespace ftflow::detail
