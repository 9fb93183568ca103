#include "ftflow/model.hpp"

#include <algorithm>
#include <regex>

namespace ftflow {

namespace {

template <class T>
const T* find_by_id(const std::vector<T>& v, const std::string& id) {
    for (const auto& x : v)
        if (x.id == id) return &x;
    return nullptr;
}

template <class T>
void sort_by_id(std::vector<T>& v) {
    std::sort(v.begin(), v.end(), [](const T& a, const T& b) { return a.id < b.id; });
}

}  // namespace

const SingularPoint* FlowModel::point(const std::string& id) const { return find_by_id(points, id); }
const Separatrix* FlowModel::sep(const std::string& id) const { return find_by_id(seps, id); }
const LimitCycle* FlowModel::cycle(const std::string& id) const { return find_by_id(cycles, id); }
const Piece* FlowModel::piece(const std::string& id) const { return find_by_id(pieces, id); }
const BoundaryCircle* FlowModel::boundary_circle(const std::string& id) const {
    return find_by_id(boundary, id);
}
const Rotation* FlowModel::rotation(const std::string& p) const {
    for (const auto& r : rotations)
        if (r.point == p) return &r;
    return nullptr;
}

void FlowModel::normalize() {
    sort_by_id(points);
    sort_by_id(seps);
    sort_by_id(cycles);
    sort_by_id(boundary);
    sort_by_id(pieces);
    std::sort(rotations.begin(), rotations.end(),
              [](const Rotation& a, const Rotation& b) { return a.point < b.point; });
}

const char* to_string(PointKind k) {
    switch (k) {
        case PointKind::Center: return "center";
        case PointKind::Sink: return "sink";
        case PointKind::Source: return "source";
        case PointKind::BSink: return "bsink";
        case PointKind::BSource: return "bsource";
        case PointKind::Saddle: return "saddle";
        case PointKind::BSaddle: return "bsaddle";
    }
    return "?";
}

const char* to_string(PieceLabel l) {
    switch (l) {
        case PieceLabel::D: return "D";
        case PieceLabel::APlus: return "A+";
        case PieceLabel::AMinus: return "A-";
        case PieceLabel::T: return "T";
        case PieceLabel::K: return "K";
        case PieceLabel::A: return "A";
        case PieceLabel::M: return "M";
        case PieceLabel::L: return "L";
    }
    return "?";
}

const char* to_string(CycleRole r) {
    switch (r) {
        case CycleRole::Attracting: return "attracting";
        case CycleRole::Repelling: return "repelling";
        case CycleRole::PeriodicCollar: return "periodic";
    }
    return "?";
}

const char* to_string(SepClass c) { return c == SepClass::MultiSaddle ? "ms" : "ss"; }

std::optional<PointKind> point_kind_from(const std::string& s) {
    for (auto k : {PointKind::Center, PointKind::Sink, PointKind::Source, PointKind::BSink,
                   PointKind::BSource, PointKind::Saddle, PointKind::BSaddle})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

std::optional<PieceLabel> piece_label_from(const std::string& s) {
    for (auto l : {PieceLabel::D, PieceLabel::APlus, PieceLabel::AMinus, PieceLabel::T,
                   PieceLabel::K, PieceLabel::A, PieceLabel::M, PieceLabel::L})
        if (s == to_string(l)) return l;
    return std::nullopt;
}

std::optional<CycleRole> cycle_role_from(const std::string& s) {
    for (auto r : {CycleRole::Attracting, CycleRole::Repelling, CycleRole::PeriodicCollar})
        if (s == to_string(r)) return r;
    return std::nullopt;
}

int singularity_index(PointKind kind, int mult) {
    switch (kind) {
        case PointKind::Center:
        case PointKind::Sink:
        case PointKind::Source: return 1;
        case PointKind::Saddle: return -mult;
        default: throw std::invalid_argument("singularity_index: boundary kind has no index");
    }
}

int euler_from_cells(const FlowModel& m) {
    int chi = static_cast<int>(m.points.size()) - static_cast<int>(m.seps.size());
    for (const auto& p : m.pieces) {
        if (p.label == PieceLabel::D) chi += 1;
        if (p.label == PieceLabel::L && p.ld) chi += p.ld->euler();
    }
    return chi;
}

std::string surface_name(const SurfaceSpec& s) {
    std::string out;
    if (s.orientable && s.genus == 0) out = "sphere";
    else if (s.orientable && s.genus == 1) out = "torus";
    else if (!s.orientable && s.genus == 1) out = "rp2";
    else if (!s.orientable && s.genus == 2) out = "klein";
    else out = (s.orientable ? "orientable" : "nonorientable") + std::string(":") + std::to_string(s.genus);
    if (s.boundary > 0) out += "+" + std::to_string(s.boundary);
    return out;
}

std::optional<SurfaceSpec> surface_from_name(const std::string& name) {
    static const std::regex re(R"((sphere|torus|rp2|klein|orientable:(\d+)|nonorientable:(\d+))(\+(\d+))?)");
    std::smatch m;
    if (!std::regex_match(name, m, re)) return std::nullopt;
    SurfaceSpec s;
    std::string base = m[1];
    if (base == "sphere") s = {true, 0, 0};
    else if (base == "torus") s = {true, 1, 0};
    else if (base == "rp2") s = {false, 1, 0};
    else if (base == "klein") s = {false, 2, 0};
    else if (m[2].matched) s = {true, std::stoi(m[2]), 0};
    else {
        s = {false, std::stoi(m[3]), 0};
        if (s.genus == 0) return std::nullopt;
    }
    if (m[5].matched) s.boundary = std::stoi(m[5]);
    return s;
}

}  // namespace ftflow
