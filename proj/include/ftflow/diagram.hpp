#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ftflow/model.hpp"

namespace ftflow {

struct DiagramView {
    // D: multi-saddles and the separatrices between them
    std::vector<std::string> d_points, d_seps;
    // D_plus adds limit cycles and sinks/sources (all non-center points)
    std::vector<std::string> dplus_points, dplus_cycles;
    // D_ss adds the ss-separatrices
    std::vector<std::string> dss_seps;
    // Bd partition
    std::vector<std::string> sing, delta_per, delta_p, p_sep, boundary_per;
};

struct GraphVertex {
    std::string id;
    std::string kind;
    std::vector<std::string> members;  // collapsed connection contents
    bool operator==(const GraphVertex&) const = default;
};

struct GraphEdge {
    std::string id;
    std::vector<std::string> ends;  // two vertex ids, or empty for a 0-hyper-edge
    bool operator==(const GraphEdge&) const = default;
};

// Cyclic (or linear, for boundary points) orders of incident edges; one list
// per cycle side or per boundary circle of a collapsed connection.
struct VertexOrder {
    bool cyclic = true;
    std::vector<std::vector<std::string>> seqs;
    bool operator==(const VertexOrder&) const = default;
};

// Rotation and walk data of the whole cell structure, the realization of the
// embedding label.
struct EmbeddingRecord {
    std::vector<Rotation> rotations;
    std::vector<LimitCycle> cycles;
    std::vector<BoundaryCircle> boundary;
    std::map<std::string, std::vector<Walk>> walks;
    bool operator==(const EmbeddingRecord&) const = default;
};

struct LabelledMultiGraph {
    std::vector<GraphVertex> vertices;
    std::vector<GraphEdge> edges;
    std::map<std::string, VertexOrder> vertex_labels;
    std::map<std::string, std::pair<std::string, std::string>> edge_labels;
    std::optional<EmbeddingRecord> embedding;

    const GraphVertex* vertex(const std::string& id) const;
    std::vector<std::string> isolated_vertices() const;
    bool operator==(const LabelledMultiGraph&) const = default;
};

DiagramView build_views(const FlowModel& m);
LabelledMultiGraph graph_Dplus(const FlowModel& m);
LabelledMultiGraph graph_ss(const FlowModel& m);

// Multi-graph-like poset condition: every edge has at most two endpoints, so
// its downset has at most three elements and the height is at most one.
bool multigraph_poset_ok(const LabelledMultiGraph& g);

// Vertex kind string used in both graphs, e.g. "saddle:1", "cycle:two".
std::string vertex_kind(const SingularPoint& p);

}  // namespace ftflow
