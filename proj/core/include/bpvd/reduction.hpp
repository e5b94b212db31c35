#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bpvd/bounds.hpp"
#include "bpvd/forbidden.hpp"
#include "bpvd/graph.hpp"
#include "bpvd/instance.hpp"
#include "bpvd/oracle.hpp"
#include "bpvd/ordering.hpp"
#include "bpvd/sunflower.hpp"

namespace bpvd {

/// Everything a step needs for audit and mechanical replay.
struct StepEvidence {
    std::optional<ForbiddenStructure> structure; // witness for single-t-vertex
    std::optional<VertexSet> cut;                // shrink: the minimum x-y cut
    std::optional<VertexSet> twin_neighborhood;  // shrink: N(A3), shared by all added twins
    std::string note;
};

/// One applied reduction.  Every step strictly decreases the vertex count and
/// never increases k.
struct ReductionStep {
    std::string rule;
    VertexSet removed;
    VertexSet added;
    int k_delta = 0;
    StepEvidence evidence;
};

struct KernelResult {
    std::optional<Instance> kernel; // nullopt: NO-instance
    std::vector<ReductionStep> trace;
    std::vector<Modulator> modulator_history;
    /// Aggressive-mode steps rejected by the per-step oracle cross-check
    /// (expected empty; populated only with verify_each_step).
    std::vector<std::string> certification_failures;
};

/// Deletes every component of G−T with no neighbor in T.  Inapplicable when
/// T is empty: then the instance is already a bipartite permutation graph and
/// is returned unchanged as its own kernel.
std::optional<ReductionStep> rule_disconnected_component(const Instance& inst,
                                                         const Modulator& m);

/// If some small forbidden structure Y has exactly one vertex v in T, that v
/// belongs to every solution: delete it and decrement k.  The caller supplies
/// the enumerated structures (and turns a firing at k == 0 into NO).
std::optional<ReductionStep> rule_single_t_vertex(const Instance& inst, const Modulator& m,
                                                  const std::vector<ForbiddenStructure>& structures);

/// Z-set: per pair {u, w} ⊆ T, the common neighbors outside T — all of them
/// when at most k+1, else the k+1 smallest ids.
VertexSet build_z(const Instance& inst, const Modulator& m);

/// Deletes every single-vertex component of G−T not captured by Z.
std::optional<ReductionStep> rule_singleton_component(const Instance& inst, const Modulator& m,
                                                      const VertexSet& z);

/// Consistency check after single-t-vertex is exhausted: a T-vertex adjacent
/// to three multi-vertex components yields a small structure (T2, or a
/// triangle in the degenerate case) with exactly one vertex in T, re-enabling
/// rule_single_t_vertex.  Returns nothing when every T-vertex touches at most
/// two such components.
std::optional<ForbiddenStructure> check_component_count(const Instance& inst,
                                                        const Modulator& m);

/// High-degree rule on one component C of G−T: builds Z' (per T-vertex caps
/// on shared neighborhoods), then either deletes the (k+2)-th vertex of an
/// equal-rightmost-neighbor class in N_C(v) − (Z ∪ Z'), or deletes a vertex
/// beyond the (k+1)^2 leftmost/rightmost guard set Z''.  Fires whenever a
/// deletable vertex exists.
std::optional<ReductionStep> rule_high_degree(const Instance& inst, const Modulator& m,
                                              const VertexSet& z, const VertexSet& component,
                                              const ComponentOrdering& so, const Bounds& b);

/// Strip-shrinking rule on one component: finds l consecutive vertices of the
/// larger side whose closed neighborhood avoids N[T], takes the inner strip
/// A3 between x = a_q and y = a_{l-q+1}, and replaces A3 by s twins with
/// neighborhood N(A3), where s is the minimum x-y vertex cut size.  Fires
/// only when |A3| > s.  Fresh twin ids start at first_fresh_id.
std::optional<ReductionStep> rule_shrink_component(const Instance& inst, const Modulator& m,
                                                   const VertexSet& component,
                                                   const ComponentOrdering& so, const Bounds& b,
                                                   VertexId first_fresh_id);

struct KernelizeOptions {
    /// Cross-check every candidate step against the exact oracle before
    /// committing it (desk scale only).
    bool verify_each_step = false;
    SolveLimit oracle_limit{4, 50'000'000};
    long long enumeration_budget = SearchBudget::kDefaultSteps;
};

/// The driver: recompute the modulator, apply the first applicable rule
/// (disconnected components, single-T-vertex with component-count witnesses,
/// singleton components, high-degree, shrink), repeat until no rule fires.
/// Every committed step strictly decreases |V|, so at most |V| iterations.
KernelResult kernelize(const Instance& inst, const Bounds& b, const KernelizeOptions& opts = {});

/// Mechanical replay of one step / a whole trace (used by the CLI replay
/// command and the trace round-trip tests).
Graph apply_step(const Graph& g, const ReductionStep& step);
Instance apply_trace(const Instance& inst, const std::vector<ReductionStep>& steps);

} // namespace bpvd
