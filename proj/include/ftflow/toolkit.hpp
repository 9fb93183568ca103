#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "ftflow/model.hpp"

namespace ftflow {

class OracleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;  // "BudgetExceeded: ..."
};

// Exhaustive search for an id bijection that preserves kinds, incidences,
// walks and cyclic orders, allowing a reversal of local orientation piece by
// piece. Each separatrix counts as two darts.
bool brute_force_equivalent(const FlowModel& a, const FlowModel& b, int max_darts = 64);

struct EnumerationBudget {
    int max_seps = 0;
    int max_points = 0;
    int max_cycles = 0;
    std::vector<SurfaceSpec> surfaces;  // closed surfaces only
    // Skip vertex sets whose index sum is no whitelisted Euler characteristic.
    // Turning this off makes Poincare-Hopf a checked property of the output.
    bool index_prefilter = true;
};

struct EnumerationStats {
    long candidates = 0;  // cell structures whose faces all classify
    long valid = 0;       // labelled models passing validate_model; a cell structure can carry several
    long unique = 0;
};

// Every valid candidate, before deduplication, in generation order.
void enumerate_candidates(const EnumerationBudget& budget, const std::function<void(const FlowModel&)>& emit,
                          EnumerationStats* stats = nullptr);

// One model per equivalence class, sorted by canonical code.
std::vector<FlowModel> enumerate_models(const EnumerationBudget& budget, EnumerationStats* stats = nullptr);

}  // namespace ftflow
