#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "bpvd/bounds.hpp"
#include "bpvd/graph.hpp"

namespace bpvd {

/// Family of nonempty vertex sets, each of cardinality at most d,
/// deduplicated and kept in sorted order for determinism.
struct SetFamily {
    std::vector<VertexSet> sets;
    int d = 0;

    SetFamily() = default;
    /// Normalizes: dedupes, sorts, validates nonempty members and |S| <= d.
    SetFamily(std::vector<VertexSet> members, int max_cardinality);

    std::size_t size() const { return sets.size(); }
};

/// Sets with identical pairwise intersections.  petal_sets holds the full
/// member sets S_i; the petals proper are S_i − core, each nonempty.
struct Sunflower {
    VertexSet core;
    std::vector<VertexSet> petal_sets;
};

/// Searches for a sunflower with at least `petals` petals.  Whenever
/// |F| > d!(petals-1)^d one is guaranteed and always found; below the
/// threshold the search may or may not find one.  Greedy disjoint subfamily,
/// else recursion on the most frequent element (ties by smallest id).
std::optional<Sunflower> find_sunflower(const SetFamily& f, int petals);

/// Repeatedly finds a sunflower with k+2 petals and discards the petal set
/// with the lexicographically largest sorted vertex sequence, until
/// |F| <= d!(k+1)^d.  Minimal hitting sets of size <= k are preserved
/// exactly.  Throws InvariantViolation if the guaranteed sunflower is missing
/// above the threshold.
SetFamily reduce_family(const SetFamily& f, int k);

/// Modulator: T = S ∪ X where S is the union of the reduced family of small
/// forbidden structures and X an exact minimum deletion set of G − S.
/// G − T is a bipartite permutation graph and |T| <= delta(k).
struct Modulator {
    VertexSet t;
    VertexSet s_part;
    VertexSet x_part;
};

struct NoInstanceVerdict {};

using ModulatorResult = std::variant<Modulator, NoInstanceVerdict>;

/// Modulator construction: enumerate small forbidden structures (d = 12),
/// reduce the family, take its union S, solve G − S exactly; |X| > k means
/// NO-instance.  Both modulator invariants are asserted on every
/// construction (strict delta regardless of mode).
ModulatorResult compute_modulator(const Graph& g, int k, const Bounds& b);

/// Same, reusing an already-enumerated family of small forbidden structure
/// vertex sets for g (the driver enumerates once per iteration).
ModulatorResult compute_modulator(const Graph& g, int k, const Bounds& b,
                                  const std::vector<VertexSet>& small_structures);

} // namespace bpvd
