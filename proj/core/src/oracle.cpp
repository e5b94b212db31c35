#include "bpvd/oracle.hpp"

#include <algorithm>
#include <functional>

#include "bpvd/errors.hpp"
#include "bpvd/forbidden.hpp"
#include "bpvd/sunflower.hpp"

namespace bpvd {

namespace {

struct SolveState {
    long long nodes_left;
    void visit() {
        if (--nodes_left < 0) throw ResourceLimitError("exact solver exceeded its node budget");
    }
};

// Depth-limited search: find a deletion set of size <= depth, or prove none.
std::optional<VertexSet> search(const Graph& g, int depth, SolveState& st) {
    st.visit();
    auto f = find_any_forbidden(g);
    if (!f) return VertexSet{};
    if (depth == 0) return std::nullopt;
    for (VertexId v : f->vertices) {
        auto sub = search(g.without_vertex(v), depth - 1, st);
        if (sub) {
            sub->insert(v);
            return sub;
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<VertexSet> exact_min_deletion(const Graph& g, const SolveLimit& limit,
                                            SolveStats* stats) {
    SolveState st{limit.node_budget};
    std::optional<VertexSet> result;
    for (int depth = 0; depth <= limit.max_k; depth++) {
        result = search(g, depth, st);
        if (result) break;
    }
    if (stats) stats->nodes = limit.node_budget - st.nodes_left;
    return result;
}

bool is_yes(const Instance& inst, const SolveLimit& limit) {
    if (inst.k > limit.max_k)
        throw std::invalid_argument("is_yes: instance budget exceeds the solve limit");
    SolveLimit eff = limit;
    eff.max_k = inst.k;
    return exact_min_deletion(inst.graph, eff).has_value();
}

bool equivalence_check(const Instance& a, const Instance& b, const SolveLimit& limit) {
    return is_yes(a, limit) == is_yes(b, limit);
}

std::optional<StrongOrdering> brute_force_strong_ordering(const Graph& g) {
    StrongOrdering so;
    for (const VertexSet& comp : connected_components(g)) {
        if (comp.size() > 10)
            throw std::invalid_argument("brute_force_strong_ordering: component larger than 10");
        Graph c = induced_subgraph(g, comp);
        if (comp.size() == 1) {
            so.components.push_back({{*comp.begin()}, {}});
            continue;
        }
        auto bip = bipartition_of(c);
        if (std::holds_alternative<OddCycle>(bip)) return std::nullopt;
        const Bipartition& b = std::get<std::vector<Bipartition>>(bip).front();
        const bool u_first = b.side_u.count(*comp.begin()) > 0;
        const VertexSet& side_u = u_first ? b.side_u : b.side_w;
        const VertexSet& side_w = u_first ? b.side_w : b.side_u;

        std::vector<VertexId> ou(side_u.begin(), side_u.end());
        std::optional<ComponentOrdering> found;
        std::sort(ou.begin(), ou.end());
        do {
            std::vector<VertexId> ow(side_w.begin(), side_w.end());
            std::sort(ow.begin(), ow.end());
            do {
                StrongOrdering cand{{ComponentOrdering{ou, ow}}};
                if (verify_strong_ordering(c, cand)) {
                    found = cand.components.front();
                    break;
                }
            } while (std::next_permutation(ow.begin(), ow.end()));
            if (found) break;
        } while (std::next_permutation(ou.begin(), ou.end()));
        if (!found) return std::nullopt;
        so.components.push_back(std::move(*found));
    }
    return so;
}

std::vector<VertexSet> enumerate_min_hitting_sets(const SetFamily& f, int k) {
    VertexSet universe;
    for (const VertexSet& s : f.sets) universe.insert(s.begin(), s.end());
    if (universe.size() > 20)
        throw std::invalid_argument("enumerate_min_hitting_sets: universe larger than 20");
    if (k > 4 || k < 0) throw std::invalid_argument("enumerate_min_hitting_sets: k out of [0, 4]");

    std::vector<VertexId> elems(universe.begin(), universe.end());
    std::vector<VertexSet> out;
    auto hits_all = [&](const VertexSet& z) {
        return std::all_of(f.sets.begin(), f.sets.end(), [&](const VertexSet& s) {
            return std::any_of(s.begin(), s.end(), [&](VertexId v) { return z.count(v); });
        });
    };
    auto minimal = [&](const VertexSet& z) {
        // every element must be the sole hitter of some set
        for (VertexId drop : z) {
            VertexSet smaller = z;
            smaller.erase(drop);
            if (hits_all(smaller)) return false;
        }
        return true;
    };
    // all subsets of size <= k, generated in sorted order
    std::vector<VertexId> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        VertexSet z(pick.begin(), pick.end());
        if (hits_all(z) && minimal(z)) out.push_back(z);
        if ((int)pick.size() == k) return;
        for (std::size_t i = from; i < elems.size(); i++) {
            pick.push_back(elems[i]);
            rec(i + 1);
            pick.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace bpvd
