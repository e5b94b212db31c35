#pragma once

#include <map>
#include <optional>
#include <set>
#include <variant>
#include <vector>

namespace bpvd {

using VertexId = int;
using VertexSet = std::set<VertexId>;

/// Simple undirected graph over stable integer vertex ids.
///
/// Invariants maintained by every constructor and every derived graph:
/// symmetric adjacency, no loops, no parallel edges, neighbor ids are members
/// of the vertex set.  All operations are pure; "mutators" return new graphs.
/// Ordered containers keep iteration (and thus the whole pipeline)
/// deterministic.
class Graph {
public:
    Graph() = default;

    /// Graph with the given vertices and edges; throws std::invalid_argument
    /// on loops or edge endpoints outside the vertex set.
    Graph(VertexSet vertices, const std::vector<std::pair<VertexId, VertexId>>& edges);

    /// Vertices are the union of the endpoints.
    static Graph from_edges(const std::vector<std::pair<VertexId, VertexId>>& edges);

    bool has_vertex(VertexId v) const { return vertex_ids_.count(v) > 0; }
    bool has_edge(VertexId u, VertexId v) const;
    const VertexSet& vertices() const { return vertex_ids_; }
    /// Neighbor set of v; throws std::invalid_argument for unknown v.
    const VertexSet& neighbors(VertexId v) const;
    std::size_t degree(VertexId v) const { return neighbors(v).size(); }

    std::size_t num_vertices() const { return vertex_ids_.size(); }
    std::size_t num_edges() const;
    /// Edges as (u, v) with u < v, sorted lexicographically.
    std::vector<std::pair<VertexId, VertexId>> edges() const;

    /// Largest vertex id; throws std::invalid_argument on the empty graph.
    VertexId max_vertex_id() const;

    Graph with_vertex(VertexId v, const VertexSet& nbrs) const;
    Graph with_edge(VertexId u, VertexId v) const;
    Graph without_vertex(VertexId v) const;
    Graph without_vertices(const VertexSet& s) const;

    bool operator==(const Graph& other) const = default;

private:
    VertexSet vertex_ids_;
    std::map<VertexId, VertexSet> adjacency_;
};

/// N(S): vertices outside s with a neighbor in s.
VertexSet open_neighborhood(const Graph& g, const VertexSet& s);
/// N[S] = N(S) ∪ S.
VertexSet closed_neighborhood(const Graph& g, const VertexSet& s);

/// Subgraph induced by s (ids preserved).  Throws std::invalid_argument when
/// s contains an unknown vertex id.
Graph induced_subgraph(const Graph& g, const VertexSet& s);

/// Maximal connected vertex sets, ordered by smallest contained vertex id.
std::vector<VertexSet> connected_components(const Graph& g);

/// Marker for vertices unreachable from the source set.
inline constexpr int kUnreachable = -1;

/// Multi-source BFS distance from s for every vertex (kUnreachable where no
/// path exists).  Throws std::invalid_argument when s is empty or contains an
/// unknown id.
std::map<VertexId, int> distances_from_set(const Graph& g, const VertexSet& s);

struct Bipartition {
    VertexSet side_u;
    VertexSet side_w;
};

/// Certificate that the graph is not bipartite: a cycle of odd length given
/// as its vertex sequence.
struct OddCycle {
    std::vector<VertexId> cycle;
};

/// Either a bipartition per component (component order as in
/// connected_components) or an odd-cycle certificate.
using BipartitionResult = std::variant<std::vector<Bipartition>, OddCycle>;

/// Two-colors every component; side_u of each component is the side
/// containing its smallest vertex id.
BipartitionResult bipartition_of(const Graph& g);

/// Minimum x–y vertex cut (Menger).  Unit-capacity vertex-splitting max-flow
/// with smallest-id-first augmentation, so the returned set is deterministic.
/// Empty set when x and y are already disconnected.  Throws
/// std::invalid_argument when x == y or x, y adjacent.
VertexSet min_vertex_cut(const Graph& g, VertexId x, VertexId y);

/// Remove a3 and add `count` fresh mutually non-adjacent vertices, each
/// adjacent to exactly N(a3) (computed in g, excluding a3).  Fresh ids are
/// first_fresh_id, first_fresh_id+1, ...; by default max_vertex_id()+1.
/// Throws std::invalid_argument when count == 0 or a3 ⊄ V(g).
Graph replace_set_with_twins(const Graph& g, const VertexSet& a3, int count,
                             std::optional<VertexId> first_fresh_id = std::nullopt);

} // namespace bpvd
