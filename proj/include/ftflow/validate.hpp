#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ftflow/model.hpp"

namespace ftflow {

enum class ViolationCode {
    SyntaxError,
    DanglingReference,
    DegreeMismatch,
    WalkInconsistency,
    DirectionViolation,
    EulerMismatch,
    OrientabilityMismatch,
    LabelMismatch,
    UnclassifiablePiece,
    Disconnected,
    EmptyModel,
};

const char* to_string(ViolationCode c);

struct Violation {
    ViolationCode code;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool has(ViolationCode c) const;
    std::string to_text() const;
};

class ModelError : public std::runtime_error {
public:
    ModelError(ViolationCode c, const std::string& what, int line = 0)
        : std::runtime_error(what), code(c), line(line) {}
    ViolationCode code;
    int line;
};

ValidationReport validate_model(const FlowModel& m);

// Throws ModelError carrying the first violation.
void require_valid(const FlowModel& m);

// The surface a model's cells describe: Euler characteristic, orientability and
// boundary count computed from the cell data alone. Meaningful for valid models.
SurfaceSpec derived_surface(const FlowModel& m);

}  // namespace ftflow
