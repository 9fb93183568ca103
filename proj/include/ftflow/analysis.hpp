#pragma once

#include <string>
#include <vector>

#include "ftflow/model.hpp"

namespace ftflow {

struct OrbitClassPoset {
    enum class Kind { Point, Cycle, Sep, Piece, Boundary };
    std::vector<std::string> elements;
    std::vector<Kind> kinds;
    std::vector<std::vector<int>> below;  // classes strictly contained in the closure
    std::vector<int> heights;

    int index_of(const std::string& id) const;
};

OrbitClassPoset orbit_class_poset(const FlowModel& m);
int height(const FlowModel& m);

// Each circuit is reported as its sorted list of separatrix ids.
std::vector<std::vector<std::string>> strict_limit_nonperiodic_circuits(const FlowModel& m);

// Circuits that are limit from a P piece on one side and bound a periodic
// boundary collar on the other; reported as non-strict.
std::vector<std::vector<std::string>> periodic_bordered_circuits(const FlowModel& m);

bool omega_equals_closure_of_closed(const FlowModel& m);
bool is_finite_type(const FlowModel& m);
bool poincare_hopf_check(const FlowModel& m);

}  // namespace ftflow
