#include "bpvd/ordering.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace bpvd {

namespace {

std::map<VertexId, int> position_map(const std::vector<VertexId>& order) {
    std::map<VertexId, int> pos;
    for (std::size_t i = 0; i < order.size(); i++) pos[order[i]] = (int)i;
    return pos;
}

bool is_permutation_of(const std::vector<VertexId>& order, const VertexSet& s) {
    if (order.size() != s.size()) return false;
    VertexSet seen(order.begin(), order.end());
    return seen == s;
}

bool consecutive(std::vector<int> positions) {
    std::sort(positions.begin(), positions.end());
    for (std::size_t i = 1; i < positions.size(); i++)
        if (positions[i] != positions[i - 1] + 1) return false;
    return true;
}

// Strong-ordering condition for one component, both orders given.
bool strong_condition_holds(const Graph& g, const std::vector<VertexId>& order_u,
                            const std::vector<VertexId>& order_w) {
    auto pos_u = position_map(order_u);
    auto pos_w = position_map(order_w);
    std::vector<std::pair<VertexId, VertexId>> uw_edges; // (u-side, w-side)
    for (VertexId u : order_u)
        for (VertexId w : g.neighbors(u))
            if (pos_w.count(w)) uw_edges.emplace_back(u, w);
    for (auto [u, wp] : uw_edges)
        for (auto [up, w] : uw_edges) {
            if (pos_u[u] < pos_u[up] && pos_w[w] < pos_w[wp]) {
                if (!g.has_edge(u, w) || !g.has_edge(up, wp)) return false;
            }
        }
    return true;
}

// Sort `side` by (leftmost neighbor position, rightmost neighbor position, id)
// relative to the opposite side's order.
std::vector<VertexId> derive_side_order(const Graph& g, const VertexSet& side,
                                        const std::vector<VertexId>& opposite_order) {
    auto pos = position_map(opposite_order);
    std::vector<VertexId> out(side.begin(), side.end());
    auto key = [&](VertexId v) {
        int lo = (int)opposite_order.size(), hi = -1;
        for (VertexId w : g.neighbors(v)) {
            auto it = pos.find(w);
            if (it == pos.end()) continue;
            lo = std::min(lo, it->second);
            hi = std::max(hi, it->second);
        }
        return std::tuple(lo, hi, v);
    };
    std::stable_sort(out.begin(), out.end(),
                     [&](VertexId a, VertexId b) { return key(a) < key(b); });
    return out;
}

struct ComponentFailure {
    std::optional<ForbiddenStructure> witness;
    bool proven = false; // true: definitely not BP; false: search gave up
};

// One component.  Returns an ordering certified by strong_condition_holds, or
// a failure describing why none was produced.
std::variant<ComponentOrdering, ComponentFailure> order_component(const Graph& c) {
    const VertexSet& vs = c.vertices();
    if (vs.size() == 1) return ComponentOrdering{{*vs.begin()}, {}};

    auto bip = bipartition_of(c);
    if (std::holds_alternative<OddCycle>(bip))
        return ComponentFailure{find_any_forbidden(c), true};
    const Bipartition& b = std::get<std::vector<Bipartition>>(bip).front();
    const bool u_first = b.side_u.count(*vs.begin()) > 0;
    const VertexSet& side_u = u_first ? b.side_u : b.side_w;
    const VertexSet& side_w = u_first ? b.side_w : b.side_u;

    auto certify = [&](const std::vector<VertexId>& ou,
                       const std::vector<VertexId>& ow) -> std::optional<ComponentOrdering> {
        if (strong_condition_holds(c, ou, ow)) return ComponentOrdering{ou, ow};
        return std::nullopt;
    };

    // heuristic seeds: a degree-minimal vertex and the farthest vertex from it
    std::vector<VertexId> seeds;
    VertexId s0 = *vs.begin();
    for (VertexId v : vs)
        if (c.degree(v) < c.degree(s0)) s0 = v;
    seeds.push_back(s0);
    {
        auto dist = distances_from_set(c, {s0});
        VertexId far = s0;
        for (VertexId v : vs)
            if (dist[v] > dist[far] ||
                (dist[v] == dist[far] &&
                 (c.degree(v) < c.degree(far) || (c.degree(v) == c.degree(far) && v < far))))
                far = v;
        if (far != s0) seeds.push_back(far);
    }

    for (VertexId seed : seeds) {
        // BFS layers ordered by (position of leftmost previous-layer neighbor,
        // degree, id)
        auto dist = distances_from_set(c, {seed});
        int max_layer = 0;
        for (VertexId v : vs) max_layer = std::max(max_layer, dist[v]);
        std::vector<std::vector<VertexId>> layers(max_layer + 1);
        for (VertexId v : vs) layers[dist[v]].push_back(v);
        std::map<VertexId, int> seq_pos;
        int next_pos = 0;
        for (int li = 0; li <= max_layer; li++) {
            auto key = [&](VertexId v) {
                int left = (int)vs.size();
                for (VertexId w : c.neighbors(v))
                    if (dist[w] == li - 1) left = std::min(left, seq_pos[w]);
                return std::tuple(left, c.degree(v), v);
            };
            std::sort(layers[li].begin(), layers[li].end(),
                      [&](VertexId a, VertexId b) { return key(a) < key(b); });
            for (VertexId v : layers[li]) seq_pos[v] = next_pos++;
        }
        std::vector<VertexId> ou, ow;
        for (const auto& layer : layers)
            for (VertexId v : layer) (side_u.count(v) ? ou : ow).push_back(v);

        if (auto co = certify(ou, ow)) return *co;
        // alternating endpoint-sort refinement
        for (int round = 0; round < 6; round++) {
            auto ou2 = derive_side_order(c, side_u, ow);
            if (auto co = certify(ou2, ow)) return *co;
            auto ow2 = derive_side_order(c, side_w, ou2);
            if (auto co = certify(ou2, ow2)) return *co;
            if (ou2 == ou && ow2 == ow) break; // fixpoint
            ou = std::move(ou2);
            ow = std::move(ow2);
        }
    }

    const std::size_t kExhaustiveSideCap = 8;
    if (std::min(side_u.size(), side_w.size()) <= kExhaustiveSideCap) {
        if (auto co = exhaustive_component_ordering(c, kExhaustiveSideCap)) return *co;
        return ComponentFailure{find_any_forbidden(c), true};
    }
    if (auto f = find_any_forbidden(c)) return ComponentFailure{f, true};
    return ComponentFailure{std::nullopt, false};
}

} // namespace

const ComponentOrdering& StrongOrdering::component_of(VertexId v) const {
    for (const ComponentOrdering& co : components) {
        if (std::find(co.order_u.begin(), co.order_u.end(), v) != co.order_u.end()) return co;
        if (std::find(co.order_w.begin(), co.order_w.end(), v) != co.order_w.end()) return co;
    }
    throw std::invalid_argument("strong ordering: vertex not covered by any component");
}

bool verify_adjacency_property(const Graph& g, const Bipartition& b,
                               const std::vector<VertexId>& order_w) {
    if (!is_permutation_of(order_w, b.side_w))
        throw std::invalid_argument("verify_adjacency_property: order is not a permutation of side_w");
    auto pos = position_map(order_w);
    for (VertexId u : b.side_u) {
        std::vector<int> ps;
        for (VertexId w : g.neighbors(u))
            if (pos.count(w)) ps.push_back(pos[w]);
        if (!consecutive(std::move(ps))) return false;
    }
    return true;
}

bool verify_enclosure_property(const Graph& g, const Bipartition& b,
                               const std::vector<VertexId>& order_w) {
    if (!is_permutation_of(order_w, b.side_w))
        throw std::invalid_argument("verify_enclosure_property: order is not a permutation of side_w");
    auto pos = position_map(order_w);
    for (VertexId u : b.side_u)
        for (VertexId u2 : b.side_u) {
            if (u == u2) continue;
            const VertexSet& nu = g.neighbors(u);
            const VertexSet& nu2 = g.neighbors(u2);
            if (!std::includes(nu2.begin(), nu2.end(), nu.begin(), nu.end())) continue;
            std::vector<int> diff;
            for (VertexId w : nu2)
                if (!nu.count(w) && pos.count(w)) diff.push_back(pos[w]);
            if (!consecutive(std::move(diff))) return false;
        }
    return true;
}

bool verify_strong_ordering(const Graph& g, const StrongOrdering& so) {
    auto comps = connected_components(g);
    if (comps.size() != so.components.size())
        throw std::invalid_argument("verify_strong_ordering: component count mismatch");
    for (std::size_t i = 0; i < comps.size(); i++) {
        const ComponentOrdering& co = so.components[i];
        VertexSet covered(co.order_u.begin(), co.order_u.end());
        covered.insert(co.order_w.begin(), co.order_w.end());
        if (covered != comps[i] ||
            covered.size() != co.order_u.size() + co.order_w.size())
            throw std::invalid_argument("verify_strong_ordering: orders do not partition the component");
        for (auto* side : {&co.order_u, &co.order_w})
            for (std::size_t a = 0; a + 1 < side->size(); a++)
                for (std::size_t b2 = a + 1; b2 < side->size(); b2++)
                    if (g.has_edge((*side)[a], (*side)[b2]))
                        throw std::invalid_argument(
                            "verify_strong_ordering: orders are not bipartition sides");
        if (!strong_condition_holds(g, co.order_u, co.order_w)) return false;
    }
    return true;
}

RecognitionResult compute_strong_ordering(const Graph& g) {
    StrongOrdering so;
    for (const VertexSet& comp : connected_components(g)) {
        auto res = order_component(induced_subgraph(g, comp));
        if (std::holds_alternative<ComponentFailure>(res)) {
            ComponentFailure f = std::get<ComponentFailure>(res);
            if (!f.proven)
                throw ResourceLimitError(
                    "recognition: heuristic failed and the component is too large "
                    "for the exhaustive fallback");
            return NotBipartitePermutation{std::move(f.witness)};
        }
        so.components.push_back(std::get<ComponentOrdering>(std::move(res)));
    }
    return so;
}

std::pair<VertexId, VertexId> leftmost_rightmost(const Graph& g, const ComponentOrdering& co,
                                                 VertexId v) {
    const bool in_u = std::find(co.order_u.begin(), co.order_u.end(), v) != co.order_u.end();
    if (!in_u && std::find(co.order_w.begin(), co.order_w.end(), v) == co.order_w.end())
        throw std::invalid_argument("leftmost_rightmost: vertex not in this component");
    const std::vector<VertexId>& opposite = in_u ? co.order_w : co.order_u;
    auto pos = position_map(opposite);
    int lo = (int)opposite.size(), hi = -1;
    for (VertexId w : g.neighbors(v)) {
        auto it = pos.find(w);
        if (it == pos.end()) continue;
        lo = std::min(lo, it->second);
        hi = std::max(hi, it->second);
    }
    if (hi < 0) throw std::invalid_argument("leftmost_rightmost: vertex has no neighbor in component");
    return {opposite[lo], opposite[hi]};
}

bool path_neighbors_bound(const Graph& g, const StrongOrdering&,
                          const std::vector<VertexId>& path, VertexId u) {
    VertexSet on_path(path.begin(), path.end());
    if (on_path.size() != path.size())
        throw std::invalid_argument("path_neighbors_bound: repeated path vertex");
    for (std::size_t i = 0; i < path.size(); i++)
        for (std::size_t j = i + 1; j < path.size(); j++) {
            bool need = (j == i + 1);
            if (g.has_edge(path[i], path[j]) != need)
                throw std::invalid_argument("path_neighbors_bound: not an induced path");
        }
    if (on_path.count(u)) throw std::invalid_argument("path_neighbors_bound: u lies on the path");

    std::vector<int> hits;
    for (std::size_t i = 0; i < path.size(); i++)
        if (g.has_edge(u, path[i])) hits.push_back((int)i);
    if (hits.size() > 3) return false;
    for (std::size_t i = 1; i < hits.size(); i++)
        if (hits[i] - hits[i - 1] != 2) return false;
    return true;
}

std::optional<ComponentOrdering> exhaustive_component_ordering(const Graph& component,
                                                               std::size_t max_side) {
    const VertexSet& vs = component.vertices();
    if (vs.size() == 1) return ComponentOrdering{{*vs.begin()}, {}};
    auto bip = bipartition_of(component);
    if (std::holds_alternative<OddCycle>(bip)) return std::nullopt;
    const Bipartition& b = std::get<std::vector<Bipartition>>(bip).front();
    const bool u_first = b.side_u.count(*vs.begin()) > 0;
    const VertexSet& side_u = u_first ? b.side_u : b.side_w;
    const VertexSet& side_w = u_first ? b.side_w : b.side_u;

    const bool sweep_u = side_u.size() <= side_w.size();
    const VertexSet& sweep = sweep_u ? side_u : side_w;
    const VertexSet& other = sweep_u ? side_w : side_u;
    if (sweep.size() > max_side)
        throw std::invalid_argument("exhaustive_component_ordering: side too large");

    std::vector<VertexId> order(sweep.begin(), sweep.end());
    std::sort(order.begin(), order.end());
    do {
        auto derived = derive_side_order(component, other, order);
        const auto& ou = sweep_u ? order : derived;
        const auto& ow = sweep_u ? derived : order;
        if (strong_condition_holds(component, ou, ow)) return ComponentOrdering{ou, ow};
    } while (std::next_permutation(order.begin(), order.end()));
    return std::nullopt;
}

} // namespace bpvd
