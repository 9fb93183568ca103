#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ftflow {

struct SurfaceSpec {
    bool orientable = true;
    int genus = 0;  // handles if orientable, crosscaps otherwise
    int boundary = 0;

    int euler() const { return (orientable ? 2 - 2 * genus : 2 - genus) - boundary; }
    bool operator==(const SurfaceSpec&) const = default;
};

enum class PointKind { Center, Sink, Source, BSink, BSource, Saddle, BSaddle };

struct SingularPoint {
    std::string id;
    PointKind kind = PointKind::Center;
    int mult = 0;  // k for Saddle(k), m for BSaddle(m)

    bool on_boundary() const {
        return kind == PointKind::BSink || kind == PointKind::BSource || kind == PointKind::BSaddle;
    }
    bool multi_saddle() const { return kind == PointKind::Saddle || kind == PointKind::BSaddle; }
    // Required number of separatrix ends, or -1 when free.
    int fixed_degree() const {
        if (kind == PointKind::Saddle) return 2 * mult + 2;
        if (kind == PointKind::BSaddle) return mult + 2;
        if (kind == PointKind::Center) return 0;
        return -1;
    }
    bool operator==(const SingularPoint&) const = default;
};

enum class Side { L = 0, R = 1 };
enum class End { Tail = 0, Head = 1 };

inline Side other(Side s) { return s == Side::L ? Side::R : Side::L; }
inline End other(End e) { return e == End::Tail ? End::Head : End::Tail; }

// Where a separatrix end sits: a singular point, or one side of a limit cycle.
struct Attachment {
    std::string id;
    int cycle_side = -1;  // -1 for points

    bool is_cycle() const { return cycle_side >= 0; }
    bool operator==(const Attachment&) const = default;
    bool operator<(const Attachment& o) const {
        return id != o.id ? id < o.id : cycle_side < o.cycle_side;
    }
};

enum class SepClass { MultiSaddle, SsSep };

struct Separatrix {
    std::string id;
    Attachment tail;
    Attachment head;
    SepClass cls = SepClass::MultiSaddle;
    bool operator==(const Separatrix&) const = default;
};

enum class CycleRole { Attracting, Repelling, PeriodicCollar };

// An ss-separatrix end on a cycle side; `downstream` is the separatrix side
// that faces the flow direction of the cycle.
struct CycleEnd {
    std::string sep;
    Side downstream = Side::L;
    bool operator==(const CycleEnd&) const = default;
};

struct CycleSide {
    CycleRole role = CycleRole::Attracting;
    std::vector<CycleEnd> ends;  // in flow order, cyclic
    bool operator==(const CycleSide&) const = default;
};

struct LimitCycle {
    std::string id;
    bool two_sided = true;
    std::vector<CycleSide> sides;  // 2 if two-sided, else 1
    bool operator==(const LimitCycle&) const = default;
};

struct Segment {
    std::string sep;
    Side side = Side::L;
    bool forward = true;
    bool operator==(const Segment&) const = default;
};

enum class AtomKind { Point, CycleSide, Boundary };

// A boundary component of a piece with no separatrix on it.
struct Atom {
    AtomKind kind = AtomKind::Point;
    std::string id;
    int side = 0;         // cycle side
    bool forward = true;  // ignored for points
    bool operator==(const Atom&) const = default;
};

struct Walk {
    std::vector<Segment> segs;
    std::optional<Atom> atom;

    bool is_atom() const { return atom.has_value(); }
    bool operator==(const Walk&) const = default;
};

enum class BoundaryKind { Periodic, Diagram };

struct BoundaryCircle {
    std::string id;
    BoundaryKind kind = BoundaryKind::Periodic;
    Walk walk;  // diagram circles only; traversed with the boundary on the left
    bool operator==(const BoundaryCircle&) const = default;
};

struct RotationEntry {
    std::string sep;
    End end = End::Tail;
    bool operator==(const RotationEntry&) const = default;
};

// Counterclockwise order of ends at a point; linear for boundary points.
struct Rotation {
    std::string point;
    std::vector<RotationEntry> order;
    bool operator==(const Rotation&) const = default;
};

enum class PieceLabel { D, APlus, AMinus, T, K, A, M, L };

struct LdRecord {
    bool orientable = true;
    int genus = 0;
    int punctures = 0;
    int euler() const { return (orientable ? 2 - 2 * genus : 2 - genus) - punctures; }
    bool operator==(const LdRecord&) const = default;
};

struct Piece {
    std::string id;
    PieceLabel label = PieceLabel::D;
    std::vector<Walk> walks;  // for A+/A-: [alpha side, omega side]
    std::optional<LdRecord> ld;
    bool operator==(const Piece&) const = default;
};

struct FlowModel {
    SurfaceSpec surface;
    std::vector<SingularPoint> points;
    std::vector<Separatrix> seps;
    std::vector<LimitCycle> cycles;
    std::vector<BoundaryCircle> boundary;
    std::vector<Rotation> rotations;
    std::vector<Piece> pieces;

    const SingularPoint* point(const std::string& id) const;
    const Separatrix* sep(const std::string& id) const;
    const LimitCycle* cycle(const std::string& id) const;
    const Piece* piece(const std::string& id) const;
    const BoundaryCircle* boundary_circle(const std::string& id) const;
    const Rotation* rotation(const std::string& point) const;

    // Sorts every record list by id so that structurally equal models compare equal.
    void normalize();
    bool operator==(const FlowModel&) const = default;
};

const char* to_string(PointKind k);
const char* to_string(PieceLabel l);
const char* to_string(CycleRole r);
const char* to_string(SepClass c);
std::optional<PointKind> point_kind_from(const std::string& s);
std::optional<PieceLabel> piece_label_from(const std::string& s);
std::optional<CycleRole> cycle_role_from(const std::string& s);

int singularity_index(PointKind kind, int mult);
int euler_from_cells(const FlowModel& m);

std::string surface_name(const SurfaceSpec& s);
std::optional<SurfaceSpec> surface_from_name(const std::string& s);

}  // namespace ftflow
