#pragma once

// Canonical form of a vertex- and edge-coloured multigraph by colour
// refinement and individualization.

#include <array>
#include <string>
#include <vector>

namespace ftflow::detail {

struct ColouredGraph {
    std::vector<std::string> colour;
    std::vector<std::array<int, 3>> edges;  // u, v, edge colour (undirected)

    int add(std::string c) {
        colour.push_back(std::move(c));
        return static_cast<int>(colour.size()) - 1;
    }
    void link(int u, int v, int c) { edges.push_back({u, v, c}); }
};

// Byte string that is equal for two graphs iff they are isomorphic as
// coloured graphs.
std::string canonical_certificate(const ColouredGraph& g);

struct Assembly;

// Canonical bytes of a cell structure (surface prefix plus certificate).
std::string structure_bytes(const Assembly& a);

// Number of leaves visited by the last call on this thread (for tests).
long last_search_leaves();

}  // namespace ftflow::detail
