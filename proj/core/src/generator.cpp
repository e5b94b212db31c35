#include "bpvd/generator.hpp"

#include <algorithm>
#include <stdexcept>

#include "bpvd/errors.hpp"
#include "bpvd/ordering.hpp"

namespace bpvd {

Graph gen_bp(const GenParams& params) {
    if (params.n_u < 0 || params.n_w < 0)
        throw std::invalid_argument("gen_bp: negative side size");
    if (params.density < 0.0 || params.density > 1.0)
        throw std::invalid_argument("gen_bp: density outside [0, 1]");
    SplitMix64 rng(params.seed);

    VertexSet vs;
    for (int v = 0; v < params.n_u + params.n_w; v++) vs.insert(v);
    std::vector<std::pair<VertexId, VertexId>> edges;
    if (params.n_u > 0 && params.n_w > 0) {
        // left window endpoints: sorted uniform draws
        std::vector<int> lefts(params.n_u);
        for (int i = 0; i < params.n_u; i++) lefts[i] = rng.next_below(params.n_w);
        std::sort(lefts.begin(), lefts.end());
        // widths: 1 + Binomial(n_w - 1, density), so density 1 gives complete
        // windows and density 0 single neighbors
        std::vector<int> widths(params.n_u, 1);
        for (int i = 0; i < params.n_u; i++)
            for (int t = 0; t + 1 < params.n_w; t++)
                if (rng.next_unit() < params.density) widths[i]++;
        // both window endpoints non-decreasing in i; clamping at the right
        // border slides the window left so full-density rows stay complete
        int prev_right = -1, prev_left = 0;
        for (int i = 0; i < params.n_u; i++) {
            int right = std::max(prev_right, std::min(lefts[i] + widths[i] - 1, params.n_w - 1));
            int left = std::max(prev_left, std::max(0, right - widths[i] + 1));
            prev_right = right;
            prev_left = left;
            for (int j = left; j <= right; j++)
                edges.emplace_back(i, params.n_u + j);
        }
    }
    Graph g(vs, edges);

    auto rec = compute_strong_ordering(g);
    if (!std::holds_alternative<StrongOrdering>(rec) ||
        !verify_strong_ordering(g, std::get<StrongOrdering>(rec)))
        throw InvariantViolation("gen_bp: staircase construction failed certification");
    return g;
}

Graph perturb(const Graph& g, const GenParams& params) {
    SplitMix64 rng(params.seed ^ 0x5eedf00dULL);
    Graph out = g;
    for (int op = 0; op < params.perturb_ops; op++) {
        std::vector<VertexId> ids(out.vertices().begin(), out.vertices().end());
        const int n = (int)ids.size();
        const bool add_vertex = n < 2 || rng.next_below(2) == 0;
        if (add_vertex) {
            VertexId fresh = n ? out.max_vertex_id() + 1 : 0;
            VertexSet nbrs;
            if (n > 0) {
                int want = 1 + rng.next_below(std::min(3, n));
                while ((int)nbrs.size() < want) nbrs.insert(ids[rng.next_below(n)]);
            }
            out = out.with_vertex(fresh, nbrs);
        } else {
            for (int attempt = 0; attempt < 32; attempt++) {
                VertexId u = ids[rng.next_below(n)];
                VertexId v = ids[rng.next_below(n)];
                if (u != v && !out.has_edge(u, v)) {
                    out = out.with_edge(u, v);
                    break;
                }
            }
        }
    }
    return out;
}

Instance gen_instance(const GenParams& params, int k) {
    return Instance(perturb(gen_bp(params), params), k);
}

Instance corpus_instance(std::uint64_t base_seed, std::uint64_t index, const CorpusParams& cp) {
    SplitMix64 rng(base_seed * 0x9e3779b97f4a7c15ULL + index);
    GenParams p;
    p.seed = rng.next();
    p.n_u = 1 + rng.next_below(cp.max_side);
    p.n_w = 1 + rng.next_below(cp.max_side);
    p.density = 0.1 + 0.8 * rng.next_unit();
    p.perturb_ops = rng.next_below(cp.max_perturb + 1);
    const int k = rng.next_below(cp.max_k + 1);
    return gen_instance(p, k);
}

} // namespace bpvd
