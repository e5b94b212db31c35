#pragma once

#include <cstdint>

#include "bpvd/graph.hpp"
#include "bpvd/instance.hpp"

namespace bpvd {

/// splitmix64: fixed algorithm, identical streams on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, 1).
    double next_unit() { return double(next() >> 11) * 0x1.0p-53; }
    /// Uniform in [0, n); n >= 1.
    int next_below(int n) { return (int)(next() % (std::uint64_t)n); }

private:
    std::uint64_t state_;
};

struct GenParams {
    std::uint64_t seed = 0;
    int n_u = 0;
    int n_w = 0;
    double density = 0.5;   // in [0, 1]
    int perturb_ops = 0;
};

/// Seeded bipartite permutation graph on ids 0..n_u-1 (U side) and
/// n_u..n_u+n_w-1 (W side).  Staircase construction: each U vertex gets a
/// window over the ordered W side with both endpoints non-decreasing, which
/// yields a strong ordering by construction; the result is certified with
/// verify_strong_ordering before being returned.
Graph gen_bp(const GenParams& params);

/// Applies params.perturb_ops seeded operations (add a vertex with random
/// neighbors / add a random edge).  Output is typically not BP; simple-graph
/// invariants always hold.
Graph perturb(const Graph& g, const GenParams& params);

/// Instance(perturb(gen_bp(params), params), k).
Instance gen_instance(const GenParams& params, int k);

/// Shape of the shared fuzz corpus: near-BP instances with side sizes in
/// [1, max_side], perturbations in [0, max_perturb], budgets in [0, max_k].
struct CorpusParams {
    int max_side = 8;
    int max_k = 3;
    int max_perturb = 4;
};

/// The i-th corpus instance for a base seed.  Used identically by the verify
/// command and the test suites, so failures reproduce from (base_seed, i).
Instance corpus_instance(std::uint64_t base_seed, std::uint64_t index, const CorpusParams& cp);

} // namespace bpvd
