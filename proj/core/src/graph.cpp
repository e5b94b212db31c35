#include "bpvd/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace bpvd {

Graph::Graph(VertexSet vertices, const std::vector<std::pair<VertexId, VertexId>>& edges)
    : vertex_ids_(std::move(vertices)) {
    for (VertexId v : vertex_ids_) adjacency_[v];
    for (auto [u, v] : edges) {
        if (u == v) throw std::invalid_argument("graph: loop at vertex " + std::to_string(u));
        if (!has_vertex(u) || !has_vertex(v))
            throw std::invalid_argument("graph: edge endpoint not a vertex");
        adjacency_[u].insert(v);
        adjacency_[v].insert(u);
    }
}

Graph Graph::from_edges(const std::vector<std::pair<VertexId, VertexId>>& edges) {
    VertexSet vs;
    for (auto [u, v] : edges) {
        vs.insert(u);
        vs.insert(v);
    }
    return Graph(std::move(vs), edges);
}

bool Graph::has_edge(VertexId u, VertexId v) const {
    auto it = adjacency_.find(u);
    return it != adjacency_.end() && it->second.count(v) > 0;
}

const VertexSet& Graph::neighbors(VertexId v) const {
    auto it = adjacency_.find(v);
    if (it == adjacency_.end())
        throw std::invalid_argument("graph: unknown vertex " + std::to_string(v));
    return it->second;
}

std::size_t Graph::num_edges() const {
    std::size_t twice = 0;
    for (const auto& [v, nbrs] : adjacency_) twice += nbrs.size();
    return twice / 2;
}

std::vector<std::pair<VertexId, VertexId>> Graph::edges() const {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const auto& [v, nbrs] : adjacency_)
        for (VertexId w : nbrs)
            if (v < w) out.emplace_back(v, w);
    return out; // map iteration already yields lexicographic order
}

VertexId Graph::max_vertex_id() const {
    if (vertex_ids_.empty()) throw std::invalid_argument("graph: empty graph has no max id");
    return *vertex_ids_.rbegin();
}

Graph Graph::with_vertex(VertexId v, const VertexSet& nbrs) const {
    if (has_vertex(v)) throw std::invalid_argument("graph: vertex already present");
    Graph g = *this;
    g.vertex_ids_.insert(v);
    g.adjacency_[v];
    for (VertexId w : nbrs) {
        if (!g.has_vertex(w) || w == v)
            throw std::invalid_argument("graph: bad neighbor for new vertex");
        g.adjacency_[v].insert(w);
        g.adjacency_[w].insert(v);
    }
    return g;
}

Graph Graph::with_edge(VertexId u, VertexId v) const {
    if (u == v) throw std::invalid_argument("graph: loop");
    if (!has_vertex(u) || !has_vertex(v)) throw std::invalid_argument("graph: unknown endpoint");
    Graph g = *this;
    g.adjacency_[u].insert(v);
    g.adjacency_[v].insert(u);
    return g;
}

Graph Graph::without_vertex(VertexId v) const { return without_vertices({v}); }

Graph Graph::without_vertices(const VertexSet& s) const {
    Graph g;
    for (VertexId v : vertex_ids_)
        if (!s.count(v)) g.vertex_ids_.insert(v);
    for (VertexId v : g.vertex_ids_) {
        VertexSet kept;
        for (VertexId w : adjacency_.at(v))
            if (!s.count(w)) kept.insert(w);
        g.adjacency_[v] = std::move(kept);
    }
    return g;
}

VertexSet open_neighborhood(const Graph& g, const VertexSet& s) {
    VertexSet out;
    for (VertexId v : s)
        for (VertexId w : g.neighbors(v))
            if (!s.count(w)) out.insert(w);
    return out;
}

VertexSet closed_neighborhood(const Graph& g, const VertexSet& s) {
    VertexSet out = open_neighborhood(g, s);
    out.insert(s.begin(), s.end());
    return out;
}

Graph induced_subgraph(const Graph& g, const VertexSet& s) {
    for (VertexId v : s)
        if (!g.has_vertex(v))
            throw std::invalid_argument("induced_subgraph: unknown vertex " + std::to_string(v));
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (VertexId v : s)
        for (VertexId w : g.neighbors(v))
            if (v < w && s.count(w)) edges.emplace_back(v, w);
    return Graph(s, edges);
}

std::vector<VertexSet> connected_components(const Graph& g) {
    std::vector<VertexSet> comps;
    VertexSet seen;
    for (VertexId s : g.vertices()) {
        if (seen.count(s)) continue;
        VertexSet comp{s};
        std::deque<VertexId> q{s};
        seen.insert(s);
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop_front();
            for (VertexId w : g.neighbors(v))
                if (seen.insert(w).second) {
                    comp.insert(w);
                    q.push_back(w);
                }
        }
        comps.push_back(std::move(comp));
    }
    return comps; // starts are visited in id order, so order is by min id
}

std::map<VertexId, int> distances_from_set(const Graph& g, const VertexSet& s) {
    if (s.empty()) throw std::invalid_argument("distances_from_set: empty source set");
    std::map<VertexId, int> dist;
    for (VertexId v : g.vertices()) dist[v] = kUnreachable;
    std::deque<VertexId> q;
    for (VertexId v : s) {
        if (!g.has_vertex(v))
            throw std::invalid_argument("distances_from_set: unknown vertex " + std::to_string(v));
        dist[v] = 0;
        q.push_back(v);
    }
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop_front();
        for (VertexId w : g.neighbors(v))
            if (dist[w] == kUnreachable) {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
    }
    return dist;
}

BipartitionResult bipartition_of(const Graph& g) {
    std::map<VertexId, int> color;
    std::map<VertexId, VertexId> parent;
    std::vector<Bipartition> parts;
    for (const VertexSet& comp : connected_components(g)) {
        VertexId root = *comp.begin();
        color[root] = 0;
        parent[root] = root;
        std::deque<VertexId> q{root};
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop_front();
            for (VertexId w : g.neighbors(v)) {
                if (!color.count(w)) {
                    color[w] = 1 - color[v];
                    parent[w] = v;
                    q.push_back(w);
                } else if (color[w] == color[v]) {
                    // walk both BFS-tree paths to the root; the first shared
                    // ancestor closes an odd cycle
                    std::vector<VertexId> pv{v}, pw{w};
                    while (pv.back() != root) pv.push_back(parent[pv.back()]);
                    while (pw.back() != root) pw.push_back(parent[pw.back()]);
                    while (pv.size() >= 2 && pw.size() >= 2 &&
                           pv[pv.size() - 2] == pw[pw.size() - 2]) {
                        pv.pop_back();
                        pw.pop_back();
                    }
                    std::vector<VertexId> cyc(pv.begin(), pv.end());
                    cyc.insert(cyc.end(), pw.rbegin() + 1, pw.rend()); // ancestor once
                    return OddCycle{std::move(cyc)};
                }
            }
        }
        Bipartition b;
        for (VertexId v : comp) (color[v] == 0 ? b.side_u : b.side_w).insert(v);
        parts.push_back(std::move(b));
    }
    return parts;
}

namespace {

// Vertex-splitting max-flow on unit capacities.  Node 2v = v_in, 2v+1 = v_out.
struct SplitFlow {
    std::map<VertexId, int> index;          // vertex -> dense index
    std::vector<VertexId> ids;              // dense index -> vertex
    std::vector<std::vector<int>> adj;      // node -> edge indices
    std::vector<int> to, cap;               // edge arrays; edge^1 is the reverse

    int node_in(VertexId v) const { return 2 * index.at(v); }
    int node_out(VertexId v) const { return 2 * index.at(v) + 1; }

    void add_arc(int a, int b, int c) {
        adj[a].push_back((int)to.size());
        to.push_back(b);
        cap.push_back(c);
        adj[b].push_back((int)to.size());
        to.push_back(a);
        cap.push_back(0);
    }
};

} // namespace

VertexSet min_vertex_cut(const Graph& g, VertexId x, VertexId y) {
    if (x == y) throw std::invalid_argument("min_vertex_cut: x == y");
    if (!g.has_vertex(x) || !g.has_vertex(y))
        throw std::invalid_argument("min_vertex_cut: unknown endpoint");
    if (g.has_edge(x, y)) throw std::invalid_argument("min_vertex_cut: x adjacent to y");

    SplitFlow f;
    for (VertexId v : g.vertices()) {
        f.index[v] = (int)f.ids.size();
        f.ids.push_back(v);
    }
    f.adj.assign(2 * f.ids.size(), {});
    const int big = (int)g.num_vertices() + 1;
    for (VertexId v : g.vertices())
        f.add_arc(f.node_in(v), f.node_out(v), v == x || v == y ? big : 1);
    // neighbor sets are ordered, so arcs are added smallest-id-first and the
    // BFS below augments along deterministic paths
    for (auto [u, v] : g.edges()) {
        f.add_arc(f.node_out(u), f.node_in(v), big);
        f.add_arc(f.node_out(v), f.node_in(u), big);
    }

    const int src = f.node_out(x), dst = f.node_in(y);
    auto bfs_augment = [&]() -> bool {
        std::vector<int> pre(f.adj.size(), -1);
        std::deque<int> q{src};
        pre[src] = -2;
        while (!q.empty() && pre[dst] == -1) {
            int a = q.front();
            q.pop_front();
            for (int e : f.adj[a])
                if (f.cap[e] > 0 && pre[f.to[e]] == -1) {
                    pre[f.to[e]] = e;
                    q.push_back(f.to[e]);
                }
        }
        if (pre[dst] == -1) return false;
        for (int a = dst; a != src;) {
            int e = pre[a];
            f.cap[e] -= 1;
            f.cap[e ^ 1] += 1;
            a = f.to[e ^ 1];
        }
        return true;
    };
    while (bfs_augment()) {
    }

    // residual reachability from the source
    std::vector<char> reach(f.adj.size(), 0);
    std::deque<int> q{src};
    reach[src] = 1;
    while (!q.empty()) {
        int a = q.front();
        q.pop_front();
        for (int e : f.adj[a])
            if (f.cap[e] > 0 && !reach[f.to[e]]) {
                reach[f.to[e]] = 1;
                q.push_back(f.to[e]);
            }
    }
    VertexSet cut;
    for (VertexId v : g.vertices())
        if (v != x && v != y && reach[f.node_in(v)] && !reach[f.node_out(v)]) cut.insert(v);
    return cut;
}

Graph replace_set_with_twins(const Graph& g, const VertexSet& a3, int count,
                             std::optional<VertexId> first_fresh_id) {
    if (count <= 0) throw std::invalid_argument("replace_set_with_twins: count must be >= 1");
    for (VertexId v : a3)
        if (!g.has_vertex(v)) throw std::invalid_argument("replace_set_with_twins: unknown vertex");
    const VertexSet target = open_neighborhood(g, a3);
    VertexId fresh = first_fresh_id.value_or(g.num_vertices() ? g.max_vertex_id() + 1 : 0);
    Graph out = g.without_vertices(a3);
    for (int i = 0; i < count; i++) out = out.with_vertex(fresh + i, target);
    return out;
}

} // namespace bpvd
