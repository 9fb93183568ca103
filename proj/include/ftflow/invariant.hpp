#pragma once

#include <stdexcept>
#include <string>

#include "ftflow/complement.hpp"
#include "ftflow/diagram.hpp"
#include "ftflow/model.hpp"

namespace ftflow {

class InvariantError : public std::runtime_error {
public:
    enum class Code { NotFiniteType, InconsistentTuple, AmbiguousTuple };
    InvariantError(Code c, const std::string& what) : std::runtime_error(what), code(c) {}
    Code code;
};

const char* to_string(InvariantError::Code c);

struct InvariantTuple {
    LabelledMultiGraph g_ss;
    LabelledMultiGraph g_dplus;
    DualGraph g_dual;
    SurfaceSpec surface;
    bool operator==(const InvariantTuple&) const = default;
};

struct CanonicalCode {
    static constexpr unsigned char kVersion = 1;
    unsigned char version = kVersion;
    std::string bytes;

    std::string hex() const;
    bool operator==(const CanonicalCode&) const = default;
    auto operator<=>(const CanonicalCode&) const = default;
};

InvariantTuple compute_invariant(const FlowModel& m);
FlowModel reconstruct(const InvariantTuple& t);

// Canonical form of the cell structure itself. Defined for every valid model,
// including ones with L pieces.
CanonicalCode structure_code(const FlowModel& m);

// Code of the reconstructed tuple; throws NotFiniteType.
CanonicalCode canonical_code(const FlowModel& m);
bool equivalent(const FlowModel& a, const FlowModel& b);

std::string describe(const InvariantTuple& t);

}  // namespace ftflow
