#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bpvd/errors.hpp"
#include "bpvd/graph.hpp"

namespace bpvd {

enum class PatternKind { OddCycle, EvenHole, Gallai };

/// One member of the fixed catalog of small (<= 12 vertex) minimal forbidden
/// induced subgraphs for the bipartite permutation class.
struct Pattern {
    PatternKind kind;
    std::string name;       // "C3".."C12", "T2", "X2", "X3"
    int cycle_length = 0;   // for cycle kinds, 0 otherwise
    int n = 0;              // number of vertices, labeled 0..n-1
    std::vector<std::pair<int, int>> edges;

    std::vector<std::vector<bool>> adjacency_matrix() const;
};

/// The embedded catalog: odd cycles C3..C11, even holes C6..C12, and the
/// three 7-vertex bipartite patterns (T2, X2, X3).  Every member is minimal:
/// deleting any single vertex yields a bipartite permutation graph (audited
/// by the test suite).
const std::vector<Pattern>& catalog();

/// Lookup by name; nullptr when absent.
const Pattern* catalog_pattern(const std::string& name);

/// An occurrence of a forbidden structure in a host graph: the image vertex
/// set together with what it induces — a catalog pattern (small, <= 12
/// vertices) or a hole longer than 12.
struct ForbiddenStructure {
    const Pattern* pattern = nullptr; // null for big holes
    int hole_length = 0;              // set for big holes
    VertexSet vertices;

    bool is_small() const { return pattern != nullptr; }
    std::string kind_name() const;

    friend bool operator<(const ForbiddenStructure& a, const ForbiddenStructure& b) {
        return a.vertices < b.vertices;
    }
};

/// Work budget shared across one enumeration call; spend() throws
/// ResourceLimitError once exhausted (never a silently truncated result).
class SearchBudget {
public:
    explicit SearchBudget(long long steps = kDefaultSteps) : remaining_(steps) {}
    void spend(long long amount = 1) {
        remaining_ -= amount;
        if (remaining_ < 0)
            throw ResourceLimitError("forbidden-structure search exceeded its work budget");
    }
    static constexpr long long kDefaultSteps = 100'000'000;

private:
    long long remaining_;
};

struct EnumerationOptions {
    bool first_only = false;
    long long step_budget = SearchBudget::kDefaultSteps;
};

/// All vertex sets inducing a catalog pattern, deduplicated by vertex set and
/// sorted by it.  Exhaustive unless first_only is set.  Throws
/// ResourceLimitError when the budget runs out.
std::vector<ForbiddenStructure> find_small_forbidden(const Graph& g,
                                                     const EnumerationOptions& opts = {});

/// Some induced cycle of length >= 5 (shortest, then lexicographically
/// smallest vertex set), or nothing.
std::optional<ForbiddenStructure> find_any_hole(const Graph& g,
                                                long long step_budget = SearchBudget::kDefaultSteps);

/// None iff g is a bipartite permutation graph.  Prefers cheap certificates:
/// a shortest odd cycle on non-bipartite input, then a small catalog
/// structure, then a long hole.
std::optional<ForbiddenStructure> find_any_forbidden(const Graph& g,
                                                     long long step_budget = SearchBudget::kDefaultSteps);

} // namespace bpvd
