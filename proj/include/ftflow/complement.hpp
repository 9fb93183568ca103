#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftflow/model.hpp"

namespace ftflow {

class ComplementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Boundary data of a piece in terms of orbit classes (ids of points, cycles,
// boundary circles, separatrices).
struct DssLabel {
    enum class Kind { Empty, AlphaOmega, Single, UnorderedPair };
    Kind kind = Kind::Empty;
    std::vector<std::string> first, second;
    bool operator==(const DssLabel&) const = default;
};

struct DualVertex {
    std::string id;
    PieceLabel label = PieceLabel::D;
    DssLabel dss;
    bool operator==(const DualVertex&) const = default;
};

struct DualGraph {
    std::vector<DualVertex> vertices;
    std::vector<std::pair<std::string, std::string>> edges;  // sorted pairs, deduplicated
    bool operator==(const DualGraph&) const = default;
};

// Recomputes every label; throws ModelError (LabelMismatch / UnclassifiablePiece).
std::map<std::string, PieceLabel> classify_components(const FlowModel& m);

// Throws ComplementError("NotAnnularP") unless the piece is A+ or A-.
bool detect_reeb(const FlowModel& m, const std::string& piece);

DualGraph dual_graph(const FlowModel& m);

std::string format_dss(const DssLabel& l);

}  // namespace ftflow
