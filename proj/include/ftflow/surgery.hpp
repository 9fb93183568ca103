#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ftflow/model.hpp"

namespace ftflow {

class SurgeryError : public std::runtime_error {
public:
    enum class Code {
        NotTransversalCore,
        NotPeriodic,
        NotInDiagram,
        NotEssential,
        NotDirectedCircuit,
        UnsupportedTarget,
        Irreducible,
        NonTermination,
    };
    SurgeryError(Code c, const std::string& what) : std::runtime_error(what), code(c) {}
    Code code;
};

const char* to_string(SurgeryError::Code c);

enum class SurgeryKind { Ct, Co, Cd, Cherry, CherryInverse };
const char* to_string(SurgeryKind k);

struct SurgeryStep {
    SurgeryKind kind = SurgeryKind::Ct;
    std::string target;
    std::string before;              // structure code of the input, hex
    std::vector<std::string> after;  // one per output component
};

// A cut may disconnect the surface; every component comes back as its own
// validated model with its surface recomputed from the cells.
struct SurgeryResult {
    std::vector<FlowModel> components;
    SurgeryStep step;
};

// Cuts the core circle of an A+ or A- piece and pastes a sink disk on the
// alpha half and a source disk on the omega half.
SurgeryResult cut_transversal(const FlowModel& m, const std::string& piece);

// `circle` names a piece of type A, T, K or M (its core orbit), a limit cycle
// with a periodic side, or a periodic boundary circle.
SurgeryResult cut_periodic(const FlowModel& m, const std::string& circle);

// `loop` lists the separatrices of a simple closed curve made of saddle
// connections between interior saddles, in any order.
SurgeryResult cut_diagram_loop(const FlowModel& m, const std::vector<std::string>& loop);

// Replaces a two-sided limit cycle without separatrix ends by a saddle with
// two loops: one loop bounds a center disk, the pair forms the new circuit.
FlowModel cherry_blowup(const FlowModel& m, const std::string& cycle);

// Inverse of cherry_blowup; `saddle` is the saddle of the configuration.
FlowModel cherry_inverse(const FlowModel& m, const std::string& saddle);

struct Reduction {
    std::vector<FlowModel> spheres;
    std::vector<SurgeryStep> steps;
};

// Periodic cuts, then diagram cuts, then transversal cuts, each applied while
// it lowers the Euler genus of every piece it produces.
Reduction reduce_to_spheres(const FlowModel& m);

// 2 - chi - boundary; zero exactly for spheres with holes.
int euler_genus(const SurfaceSpec& s);

// Diagram loops available to cut_diagram_loop, each as sorted separatrix ids.
std::vector<std::vector<std::string>> diagram_loops(const FlowModel& m, size_t limit = 4096);

}  // namespace ftflow
