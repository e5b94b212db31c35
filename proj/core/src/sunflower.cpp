#include "bpvd/sunflower.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "bpvd/errors.hpp"
#include "bpvd/forbidden.hpp"
#include "bpvd/oracle.hpp"
#include "bpvd/ordering.hpp"

namespace bpvd {

SetFamily::SetFamily(std::vector<VertexSet> members, int max_cardinality) : d(max_cardinality) {
    if (d < 1) throw std::invalid_argument("set family: d must be positive");
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (const VertexSet& s : members) {
        if (s.empty()) throw std::invalid_argument("set family: empty member set");
        if ((int)s.size() > d) throw std::invalid_argument("set family: member larger than d");
    }
    sets = std::move(members);
}

std::optional<Sunflower> find_sunflower(const SetFamily& f, int petals) {
    if (petals < 1) throw std::invalid_argument("find_sunflower: petals must be >= 1");
    if (f.sets.empty()) return std::nullopt;

    // greedy maximal disjoint subfamily (sets are in sorted order)
    std::vector<VertexSet> disjoint;
    VertexSet taken;
    for (const VertexSet& s : f.sets) {
        bool clash = std::any_of(s.begin(), s.end(), [&](VertexId v) { return taken.count(v); });
        if (!clash) {
            disjoint.push_back(s);
            taken.insert(s.begin(), s.end());
        }
    }
    if ((int)disjoint.size() >= petals) return Sunflower{{}, std::move(disjoint)};

    // recurse on the most frequent element
    std::map<VertexId, int> freq;
    for (const VertexSet& s : f.sets)
        for (VertexId v : s) freq[v]++;
    VertexId x = freq.begin()->first;
    for (auto [v, cnt] : freq)
        if (cnt > freq[x]) x = v; // ties keep the smallest id (map order)

    std::vector<VertexSet> residues;
    for (const VertexSet& s : f.sets) {
        if (!s.count(x)) continue;
        VertexSet r = s;
        r.erase(x);
        if (!r.empty()) residues.push_back(std::move(r));
    }
    if (residues.empty()) return std::nullopt;
    auto sub = find_sunflower(SetFamily(std::move(residues), std::max(1, f.d - 1)), petals);
    if (!sub) return std::nullopt;
    Sunflower out;
    out.core = sub->core;
    out.core.insert(x);
    for (VertexSet p : sub->petal_sets) {
        p.insert(x);
        out.petal_sets.push_back(std::move(p));
    }
    return out;
}

namespace {

BigInt family_threshold(int d, const BigInt& base) {
    BigInt fact = 1;
    for (int i = 2; i <= d; i++) fact *= i;
    BigInt p = 1;
    for (int i = 0; i < d; i++) p *= base;
    return fact * p;
}

} // namespace

SetFamily reduce_family(const SetFamily& f, int k) {
    if (k < 0) throw std::invalid_argument("reduce_family: negative k");
    const BigInt threshold = family_threshold(f.d, k + 1);
    std::vector<VertexSet> sets = f.sets;
    while (BigInt(sets.size()) > threshold) {
        auto sf = find_sunflower(SetFamily(sets, f.d), k + 2);
        if (!sf)
            throw InvariantViolation(
                "reduce_family: family above the sunflower threshold but no sunflower found");
        // discard the petal set with lexicographically largest sorted sequence
        const VertexSet* victim = &sf->petal_sets.front();
        for (const VertexSet& p : sf->petal_sets)
            if (p > *victim) victim = &p;
        auto it = std::find(sets.begin(), sets.end(), *victim);
        if (it == sets.end())
            throw InvariantViolation("reduce_family: sunflower petal is not a family member");
        sets.erase(it);
    }
    return SetFamily(std::move(sets), f.d);
}

ModulatorResult compute_modulator(const Graph& g, int k, const Bounds& b) {
    std::vector<VertexSet> structures;
    for (const ForbiddenStructure& fs : find_small_forbidden(g))
        structures.push_back(fs.vertices);
    return compute_modulator(g, k, b, structures);
}

ModulatorResult compute_modulator(const Graph& g, int k, const Bounds& b,
                                  const std::vector<VertexSet>& small_structures) {
    Modulator m;
    if (!small_structures.empty()) {
        SetFamily family(small_structures, 12);
        SetFamily reduced = reduce_family(family, k);
        for (const VertexSet& s : reduced.sets) m.s_part.insert(s.begin(), s.end());
    }
    // G - S contains no small forbidden structure; solve it exactly
    SolveLimit limit;
    limit.max_k = k;
    auto x = exact_min_deletion(g.without_vertices(m.s_part), limit);
    if (!x) return NoInstanceVerdict{};
    m.x_part = *x;
    m.t = m.s_part;
    m.t.insert(m.x_part.begin(), m.x_part.end());

    if (BigInt(m.t.size()) > strict_delta(k))
        throw InvariantViolation("modulator: |T| exceeds delta(k)");
    if (find_any_forbidden(g.without_vertices(m.t)))
        throw InvariantViolation("modulator: G - T is not a bipartite permutation graph");
    (void)b;
    return m;
}

} // namespace bpvd
