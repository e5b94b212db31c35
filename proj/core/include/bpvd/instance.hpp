#pragma once

#include <stdexcept>

#include "bpvd/graph.hpp"

namespace bpvd {

/// A deletion-problem instance: can at most k vertices be removed from graph
/// so that a bipartite permutation graph remains?
struct Instance {
    Graph graph;
    int k = 0;

    Instance() = default;
    Instance(Graph g, int budget) : graph(std::move(g)), k(budget) {
        if (k < 0) throw std::invalid_argument("instance: negative budget");
    }
};

} // namespace bpvd
