#pragma once

#include "tropd/core.hpp"

#include <set>
#include <utility>
#include <vector>

namespace tropd {

struct GraphNode {
    int pair = 0;
    Degree degree;
    FlowVector flow;
};

// Directed graph on the labelled subdivision: arc i -> j when the flows of both regions point from
// region i into region j across E_ij (equal flows included).
struct CrossingGraph {
    std::vector<GraphNode> nodes;          // by pair index
    std::vector<std::pair<int, int>> arcs;  // pair indices, sorted

    bool has_arc(int i, int j) const;
    std::vector<int> successors(int i) const;
    std::vector<int> predecessors(int i) const;
};

CrossingGraph build_graph(const Tds& tds);

struct CycleList {
    std::vector<std::vector<int>> cycles;  // pair indices, each rotated to start at its smallest index
    bool truncated = false;
};

// Elementary circuits of length >= min_len, in lexicographic order of the rotated node lists.
CycleList enumerate_cycles(const CrossingGraph& g, int min_len = 4, std::size_t cap = 100000);

std::set<int> reachable(const CrossingGraph& g, const std::set<int>& from, bool reversed = false);

}  // namespace tropd
