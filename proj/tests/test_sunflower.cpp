#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bpvd/forbidden.hpp"
#include "bpvd/generator.hpp"
#include "bpvd/oracle.hpp"
#include "bpvd/ordering.hpp"
#include "bpvd/sunflower.hpp"
#include "support/builders.hpp"

using namespace bpvd;
using namespace bpvd::testsupport;

namespace {

void check_sunflower_shape(const Sunflower& s) {
    REQUIRE(!s.petal_sets.empty());
    for (std::size_t i = 0; i < s.petal_sets.size(); i++) {
        // petal proper is nonempty
        VertexSet petal;
        std::set_difference(s.petal_sets[i].begin(), s.petal_sets[i].end(), s.core.begin(),
                            s.core.end(), std::inserter(petal, petal.end()));
        CHECK(!petal.empty());
        for (std::size_t j = i + 1; j < s.petal_sets.size(); j++) {
            VertexSet inter;
            std::set_intersection(s.petal_sets[i].begin(), s.petal_sets[i].end(),
                                  s.petal_sets[j].begin(), s.petal_sets[j].end(),
                                  std::inserter(inter, inter.end()));
            CHECK(inter == s.core);
        }
    }
}

SetFamily random_family(SplitMix64& rng, int universe, int d, int count) {
    std::vector<VertexSet> sets;
    for (int i = 0; i < count; i++) {
        VertexSet s;
        int size = 1 + rng.next_below(d);
        while ((int)s.size() < size) s.insert(rng.next_below(universe));
        sets.push_back(std::move(s));
    }
    return SetFamily(sets, d);
}

} // namespace

TEST_CASE("find_sunflower basics") {
    SUBCASE("disjoint singletons") {
        SetFamily f({{1}, {2}, {3}}, 1);
        auto s = find_sunflower(f, 3);
        REQUIRE(s.has_value());
        CHECK(s->core.empty());
        CHECK(s->petal_sets.size() == 3);
        check_sunflower_shape(*s);
    }
    SUBCASE("common element becomes the core") {
        SetFamily f({{1, 2}, {1, 3}, {1, 4}}, 2);
        auto s = find_sunflower(f, 3);
        REQUIRE(s.has_value());
        CHECK(s->core == VertexSet{1});
        CHECK(s->petal_sets.size() == 3);
        check_sunflower_shape(*s);
    }
    SUBCASE("too few sets") {
        SetFamily f({{1, 2}}, 2);
        CHECK(!find_sunflower(f, 2).has_value());
    }
    SUBCASE("petals must be positive") {
        SetFamily f({{1}}, 1);
        CHECK_THROWS_AS(find_sunflower(f, 0), std::invalid_argument);
    }
}

TEST_CASE("sunflower lemma threshold (randomized)") {
    SplitMix64 rng(42);
    int above_threshold_cases = 0;
    for (int trial = 0; trial < 200; trial++) {
        int d = 2 + rng.next_below(2);
        int petals = 2 + rng.next_below(3);
        long long threshold = 1;
        for (int i = 2; i <= d; i++) threshold *= i;
        for (int i = 0; i < d; i++) threshold *= (petals - 1);
        int count = (int)threshold + 1 + rng.next_below(10);
        SetFamily f = random_family(rng, 10 + rng.next_below(20), d, count);
        if ((long long)f.size() > threshold) {
            above_threshold_cases++;
            auto s = find_sunflower(f, petals);
            REQUIRE_MESSAGE(s.has_value(), "trial ", trial, " d=", d, " petals=", petals,
                            " |F|=", f.size());
            CHECK((int)s->petal_sets.size() >= petals);
            check_sunflower_shape(*s);
        }
    }
    CHECK(above_threshold_cases > 100);
}

TEST_CASE("reduce_family") {
    SUBCASE("small families pass through") {
        SetFamily f({{1, 2}, {3, 4}}, 2);
        CHECK(reduce_family(f, 1).sets == f.sets);
    }
    SUBCASE("singleton family shrinks to the bound") {
        SetFamily f({{1}, {2}, {3}, {4}, {5}}, 1);
        SetFamily r = reduce_family(f, 1); // bound 1!(k+1)^1 = 2
        CHECK(r.size() == 2);
        // discards drop the lexicographically largest remaining set
        CHECK(r.sets == std::vector<VertexSet>{{1}, {2}});
    }
    SUBCASE("minimal hitting sets are preserved (randomized)") {
        SplitMix64 rng(7);
        for (int trial = 0; trial < 60; trial++) {
            int d = 1 + rng.next_below(3);
            int k = rng.next_below(3);
            SetFamily f = random_family(rng, 6 + rng.next_below(6), d, 3 + rng.next_below(25));
            SetFamily r = reduce_family(f, k);
            CHECK(enumerate_min_hitting_sets(f, k) == enumerate_min_hitting_sets(r, k));
            BigInt bound = 1;
            for (int i = 2; i <= d; i++) bound *= i;
            for (int i = 0; i < d; i++) bound *= (k + 1);
            CHECK(BigInt(r.size()) <= bound);
        }
    }
}

TEST_CASE("compute_modulator") {
    SUBCASE("clean BP graph has an empty modulator") {
        auto mr = compute_modulator(complete_bipartite(3, 3), 1, Bounds::strict());
        REQUIRE(std::holds_alternative<Modulator>(mr));
        CHECK(std::get<Modulator>(mr).t.empty());
    }
    SUBCASE("C5 puts all five vertices into S") {
        auto mr = compute_modulator(cycle_graph(5), 1, Bounds::strict());
        REQUIRE(std::holds_alternative<Modulator>(mr));
        const Modulator& m = std::get<Modulator>(mr);
        CHECK(m.s_part == VertexSet{0, 1, 2, 3, 4});
        CHECK(m.x_part.empty());
        CHECK(m.t == m.s_part);
    }
    SUBCASE("disjoint triangles all land in S, NO is left to the driver") {
        Graph g = disjoint_union(disjoint_union(cycle_graph(3), cycle_graph(3)), cycle_graph(3));
        auto mr = compute_modulator(g, 1, Bounds::strict());
        REQUIRE(std::holds_alternative<Modulator>(mr));
        CHECK(std::get<Modulator>(mr).t.size() == 9);
    }
    SUBCASE("long holes alone force NO through the exact part") {
        auto mr = compute_modulator(cycle_graph(13), 0, Bounds::strict());
        CHECK(std::holds_alternative<NoInstanceVerdict>(mr));
    }
    SUBCASE("modulator invariants on fuzzed instances") {
        for (std::uint64_t seed = 0; seed < 40; seed++) {
            Instance inst = corpus_instance(99, seed, CorpusParams{6, 3, 4});
            auto mr = compute_modulator(inst.graph, inst.k, Bounds::strict());
            if (std::holds_alternative<NoInstanceVerdict>(mr)) {
                SolveLimit lim{inst.k, 50'000'000};
                CHECK(!is_yes(inst, lim));
            } else {
                const Modulator& m = std::get<Modulator>(mr);
                CHECK(!find_any_forbidden(inst.graph.without_vertices(m.t)).has_value());
                CHECK(BigInt(m.t.size()) <= strict_delta(inst.k));
            }
        }
    }
}

TEST_CASE("hitting-set transfer to G[T]") {
    // minimal hitters (size <= k) of all small structures equal those of the
    // structures contained in G[T]
    for (std::uint64_t seed = 0; seed < 25; seed++) {
        Instance inst = corpus_instance(123, seed, CorpusParams{6, 2, 3});
        if (inst.graph.num_vertices() > 14) continue;
        auto mr = compute_modulator(inst.graph, inst.k, Bounds::strict());
        if (!std::holds_alternative<Modulator>(mr)) continue;
        const Modulator& m = std::get<Modulator>(mr);

        std::vector<VertexSet> all_sets, t_sets;
        for (const ForbiddenStructure& f : find_small_forbidden(inst.graph)) {
            all_sets.push_back(f.vertices);
            if (std::includes(m.t.begin(), m.t.end(), f.vertices.begin(), f.vertices.end()))
                t_sets.push_back(f.vertices);
        }
        if (all_sets.empty()) continue;
        SetFamily all_family(all_sets, 12);
        auto lhs = enumerate_min_hitting_sets(all_family, inst.k);
        if (t_sets.empty()) {
            CHECK(lhs == std::vector<VertexSet>{{}});
        } else {
            SetFamily t_family(t_sets, 12);
            CHECK(lhs == enumerate_min_hitting_sets(t_family, inst.k));
        }
    }
}

TEST_CASE("eval_bounds") {
    SUBCASE("strict values at k = 0") {
        BoundsValues v = Bounds::strict().eval(0);
        CHECK(v.delta == BigInt("5748019200"));
        CHECK(v.epsilon > v.delta);
        CHECK(v.phi > v.epsilon);
        CHECK(v.strip_l == 13 * v.epsilon + 3);
        CHECK(v.strip_q == 5 * v.epsilon);
    }
    SUBCASE("positivity and growth for small k") {
        for (int k = 0; k <= 4; k++) {
            BoundsValues v = Bounds::strict().eval(k);
            CHECK(v.epsilon > v.delta);
            CHECK(v.phi > v.epsilon);
        }
    }
    SUBCASE("aggressive overrides are echoed back") {
        Bounds::Overrides ov;
        ov.delta = 5;
        ov.epsilon = 8;
        BoundsValues v = Bounds::aggressive(ov).eval(1);
        CHECK(v.delta == 5);
        CHECK(v.epsilon == 8);
        CHECK(v.strip_l == 13 * 8 + 3); // derived from the overridden epsilon
    }
    SUBCASE("negative k rejected") {
        CHECK_THROWS_AS(Bounds::strict().eval(-1), std::invalid_argument);
    }
}
