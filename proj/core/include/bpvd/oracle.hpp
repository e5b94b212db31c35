#pragma once

#include <optional>
#include <vector>

#include "bpvd/graph.hpp"
#include "bpvd/instance.hpp"
#include "bpvd/ordering.hpp"

namespace bpvd {

/// Caps for the exact solver.  Exceeding node_budget raises
/// ResourceLimitError — never a wrong answer.
struct SolveLimit {
    int max_k = 4;
    long long node_budget = 10'000'000;
};

struct SolveStats {
    long long nodes = 0;
};

/// Exact minimum deletion set into the bipartite permutation class, or
/// nullopt when no set of size <= max_k exists.  Iterative deepening on the
/// deletion size, branching on the vertices of one forbidden structure per
/// node (smallest-id first, so results replay deterministically).
std::optional<VertexSet> exact_min_deletion(const Graph& g, const SolveLimit& limit,
                                            SolveStats* stats = nullptr);

/// True iff some deletion set of size <= inst.k exists.  Requires
/// inst.k <= limit.max_k.
bool is_yes(const Instance& inst, const SolveLimit& limit);

/// is_yes(a) == is_yes(b).
bool equivalence_check(const Instance& a, const Instance& b, const SolveLimit& limit);

/// Ground-truth recognizer: per component (each <= 10 vertices, else
/// std::invalid_argument) tries all order pairs of both sides and returns the
/// first certified strong ordering, or nullopt when none exists.
std::optional<StrongOrdering> brute_force_strong_ordering(const Graph& g);

/// Set family over vertex ids (shared with the sunflower machinery).
struct SetFamily;

/// All inclusion-minimal hitting sets of size <= k, sorted.  Universe must
/// have <= 20 elements and k <= 4 (std::invalid_argument otherwise).
std::vector<VertexSet> enumerate_min_hitting_sets(const SetFamily& f, int k);

} // namespace bpvd
