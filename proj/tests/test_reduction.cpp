#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bpvd/edge_io.hpp"
#include "bpvd/generator.hpp"
#include "bpvd/oracle.hpp"
#include "bpvd/reduction.hpp"
#include "support/builders.hpp"

using namespace bpvd;
using namespace bpvd::testsupport;

namespace {

const SolveLimit kLimit{4, 50'000'000};

Modulator modulator_of(const VertexSet& t) {
    Modulator m;
    m.t = t;
    m.s_part = t;
    return m;
}

ComponentOrdering ordering_of(const Graph& g, const VertexSet& component) {
    auto rec = compute_strong_ordering(induced_subgraph(g, component));
    REQUIRE(std::holds_alternative<StrongOrdering>(rec));
    return std::get<StrongOrdering>(rec).components.front();
}

Bounds worked_example_bounds() {
    Bounds::Overrides ov;
    ov.delta = 6;
    ov.epsilon = 1;
    ov.strip_l = 7;
    ov.strip_q = 2;
    return Bounds::aggressive(ov);
}

} // namespace

TEST_CASE("disconnected component rule") {
    SUBCASE("isolated P3 next to a C5 modulator") {
        Graph g = disjoint_union(cycle_graph(5), path_graph(3));
        Instance inst(g, 1);
        auto step = rule_disconnected_component(inst, modulator_of({0, 1, 2, 3, 4}));
        REQUIRE(step.has_value());
        CHECK(step->removed == VertexSet{5, 6, 7});
        CHECK(step->k_delta == 0);
        CHECK(equivalence_check(inst, Instance(apply_step(g, *step), 1), kLimit));
    }
    SUBCASE("everything touches T") {
        Graph g = cycle_graph(5).with_vertex(5, {0});
        CHECK(!rule_disconnected_component(Instance(g, 1), modulator_of({0, 1, 2, 3, 4}))
                   .has_value());
    }
    SUBCASE("G - T empty") {
        Graph g = cycle_graph(3);
        CHECK(!rule_disconnected_component(Instance(g, 1), modulator_of({0, 1, 2})).has_value());
    }
    SUBCASE("empty T keeps a BP instance intact") {
        CHECK(!rule_disconnected_component(Instance(path_graph(4), 1), modulator_of({}))
                   .has_value());
    }
}

TEST_CASE("single T vertex rule") {
    SUBCASE("triangle pinned by one T vertex") {
        Graph g = cycle_graph(3);
        Instance inst(g, 1);
        auto structures = find_small_forbidden(g);
        auto step = rule_single_t_vertex(inst, modulator_of({0}), structures);
        REQUIRE(step.has_value());
        CHECK(step->removed == VertexSet{0});
        CHECK(step->k_delta == -1);
        CHECK(equivalence_check(inst, Instance(apply_step(g, *step), 0), kLimit));
    }
    SUBCASE("structures fully inside T do not fire") {
        Graph g = cycle_graph(3);
        auto structures = find_small_forbidden(g);
        CHECK(!rule_single_t_vertex(Instance(g, 1), modulator_of({0, 1, 2}), structures)
                   .has_value());
        CHECK(!rule_single_t_vertex(Instance(g, 1), modulator_of({0, 1}), structures).has_value());
    }
    SUBCASE("T2 with only its center in T") {
        Graph t2 = Graph::from_edges({{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 5}, {3, 6}});
        Instance inst(t2, 1);
        auto structures = find_small_forbidden(t2);
        auto step = rule_single_t_vertex(inst, modulator_of({0}), structures);
        REQUIRE(step.has_value());
        CHECK(step->removed == VertexSet{0});
        CHECK(equivalence_check(inst, Instance(apply_step(t2, *step), 0), kLimit));
    }
}

TEST_CASE("Z set construction") {
    SUBCASE("all common neighbors when few") {
        // T = {0, 1}; common outside neighbors {2, 3}
        Graph g = Graph::from_edges({{0, 2}, {1, 2}, {0, 3}, {1, 3}});
        CHECK(build_z(Instance(g, 1), modulator_of({0, 1})) == VertexSet{2, 3});
    }
    SUBCASE("empty T gives empty Z") {
        CHECK(build_z(Instance(path_graph(4), 1), modulator_of({})).empty());
    }
    SUBCASE("overflow keeps the k+1 smallest ids") {
        Graph g({0, 1, 2, 3, 4, 5, 6},
                {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {0, 4}, {1, 4}, {0, 5}, {1, 5}, {0, 6}, {1, 6}});
        CHECK(build_z(Instance(g, 1), modulator_of({0, 1})) == VertexSet{2, 3});
    }
}

TEST_CASE("singleton component rule") {
    // T = {0, 1} sharing k+2 = 3 common neighbors; Z keeps the two smallest
    Graph g({0, 1, 2, 3, 4}, {{0, 2}, {1, 2}, {0, 3}, {1, 3}, {0, 4}, {1, 4}});
    Instance inst(g, 1);
    Modulator m = modulator_of({0, 1});
    VertexSet z = build_z(inst, m);
    CHECK(z == VertexSet{2, 3});

    SUBCASE("the vertex outside Z goes away, equivalently") {
        auto step = rule_singleton_component(inst, m, z);
        REQUIRE(step.has_value());
        CHECK(step->removed == VertexSet{4});
        CHECK(equivalence_check(inst, Instance(apply_step(g, *step), 1), kLimit));
    }
    SUBCASE("vertices inside Z stay") {
        auto step = rule_singleton_component(inst, m, z);
        REQUIRE(step.has_value());
        CHECK(!step->removed.count(2));
        CHECK(!step->removed.count(3));
    }
    SUBCASE("no singleton components, no step") {
        Graph h = path_graph(5);
        CHECK(!rule_singleton_component(Instance(h, 1), modulator_of({0}), {}).has_value());
    }
}

TEST_CASE("component count check") {
    SUBCASE("three pendant paths from one T vertex give a T2 witness") {
        // v = 0 in T; components {1,2}, {3,4}, {5,6}
        Graph g = Graph::from_edges({{0, 1}, {1, 2}, {0, 3}, {3, 4}, {0, 5}, {5, 6}});
        auto witness = check_component_count(Instance(g, 1), modulator_of({0}));
        REQUIRE(witness.has_value());
        CHECK(witness->kind_name() == "T2");
        CHECK(witness->vertices == VertexSet{0, 1, 2, 3, 4, 5, 6});
        // the witness re-enables the single-T-vertex rule
        std::vector<ForbiddenStructure> ws{*witness};
        auto step = rule_single_t_vertex(Instance(g, 1), modulator_of({0}), ws);
        REQUIRE(step.has_value());
        CHECK(step->removed == VertexSet{0});
    }
    SUBCASE("two components are fine") {
        Graph g = Graph::from_edges({{0, 1}, {1, 2}, {0, 3}, {3, 4}});
        CHECK(!check_component_count(Instance(g, 1), modulator_of({0})).has_value());
    }
    SUBCASE("empty G - T is fine") {
        Graph g = cycle_graph(3);
        CHECK(!check_component_count(Instance(g, 0), modulator_of({0, 1, 2})).has_value());
    }
}

TEST_CASE("high degree rule") {
    SUBCASE("K2,3 at k = 0: an equal-rightmost B vertex is deleted") {
        Graph g = complete_bipartite(2, 3);
        Instance inst(g, 0);
        Modulator m = modulator_of({});
        VertexSet comp = g.vertices();
        auto step = rule_high_degree(inst, m, {}, comp, ordering_of(g, comp), Bounds::strict());
        REQUIRE(step.has_value());
        REQUIRE(step->removed.size() == 1);
        // all three W vertices share r; the second in order is deleted
        CHECK(step->removed == VertexSet{3});
        CHECK(equivalence_check(inst, Instance(apply_step(g, *step), 0), kLimit));
    }
    SUBCASE("low degrees leave nothing to delete") {
        Graph g = path_graph(2);
        VertexSet comp = g.vertices();
        CHECK(!rule_high_degree(Instance(g, 0), modulator_of({}), {}, comp, ordering_of(g, comp),
                                Bounds::strict())
                   .has_value());
        // P6 at k = 1: no three vertices share a rightmost neighbor
        Graph p6 = path_graph(6);
        VertexSet comp6 = p6.vertices();
        CHECK(!rule_high_degree(Instance(p6, 1), modulator_of({}), {}, comp6,
                                ordering_of(p6, comp6), Bounds::strict())
                   .has_value());
    }
    SUBCASE("equivalence on fuzzed firings") {
        int fired = 0;
        for (std::uint64_t seed = 0; seed < 60; seed++) {
            GenParams p;
            p.seed = seed;
            p.n_u = 2 + (int)(seed % 4);
            p.n_w = 3 + (int)(seed % 5);
            p.density = 0.5 + 0.04 * double(seed % 10);
            Graph g = gen_bp(p);
            if (connected_components(g).size() != 1) continue;
            const int k = (int)(seed % 2);
            Instance inst(g, k);
            VertexSet comp = g.vertices();
            auto step = rule_high_degree(inst, modulator_of({}), {}, comp, ordering_of(g, comp),
                                         Bounds::strict());
            if (!step) continue;
            fired++;
            CHECK(equivalence_check(inst, Instance(apply_step(g, *step), k), kLimit));
        }
        CHECK(fired >= 10);
    }
}

TEST_CASE("shrink rule: the worked path example") {
    // path v0..v12; A = even vertices; epsilon=1, l=7, q=2
    Graph g = path_graph(13);
    Instance inst(g, 0);
    VertexSet comp = g.vertices();
    auto step = rule_shrink_component(inst, modulator_of({}), comp, ordering_of(g, comp),
                                      worked_example_bounds(), 13);
    REQUIRE(step.has_value());
    CHECK(step->removed == VertexSet{4, 6});
    CHECK(step->added == VertexSet{13});
    REQUIRE(step->evidence.twin_neighborhood.has_value());
    CHECK(*step->evidence.twin_neighborhood == VertexSet{3, 5, 7});
    REQUIRE(step->evidence.cut.has_value());
    CHECK(step->evidence.cut->size() == 1);

    Graph shrunk = apply_step(g, *step);
    CHECK(shrunk.num_vertices() == 12);
    CHECK(shrunk.neighbors(13) == VertexSet{3, 5, 7});
    CHECK(equivalence_check(inst, Instance(shrunk, 0), kLimit));

    SUBCASE("window blocked by nearby T is inapplicable") {
        // every vertex is within distance 2 of the T vertex below
        Graph h = g.with_vertex(13, {0, 2, 4, 6, 8, 10, 12});
        VertexSet comp_h = comp;
        auto blocked = rule_shrink_component(Instance(h, 0), modulator_of({13}), comp_h,
                                             ordering_of(g, comp), worked_example_bounds(), 14);
        CHECK(!blocked.has_value());
    }
    SUBCASE("no strict decrease, no firing") {
        // K2,7: every window yields |A3| = 2 = s (the two U vertices cut)
        Bounds::Overrides ov;
        ov.delta = 6;
        ov.epsilon = 2;
        ov.strip_l = 5;
        ov.strip_q = 1;
        Graph k27 = complete_bipartite(2, 7);
        VertexSet comp27 = k27.vertices();
        auto none = rule_shrink_component(Instance(k27, 0), modulator_of({}), comp27,
                                          ordering_of(k27, comp27), Bounds::aggressive(ov), 9);
        CHECK(!none.has_value());
    }
}

TEST_CASE("kernelize driver") {
    SUBCASE("P4 is already its own kernel") {
        KernelResult r = kernelize(Instance(path_graph(4), 2), Bounds::strict());
        REQUIRE(r.kernel.has_value());
        CHECK(r.kernel->graph == path_graph(4));
        CHECK(r.kernel->k == 2);
        CHECK(r.trace.empty());
    }
    SUBCASE("C5 plus an isolated P4 keeps only the C5") {
        Graph g = disjoint_union(cycle_graph(5), path_graph(4));
        KernelResult r = kernelize(Instance(g, 1), Bounds::strict());
        REQUIRE(r.kernel.has_value());
        CHECK(r.kernel->graph == cycle_graph(5));
        CHECK(r.kernel->k == 1);
        REQUIRE(r.trace.size() == 1);
        CHECK(r.trace[0].rule == "disconnected-component");
    }
    SUBCASE("a long hole with no budget is a NO instance") {
        KernelResult r = kernelize(Instance(cycle_graph(13), 0), Bounds::strict());
        CHECK(!r.kernel.has_value());
    }
    SUBCASE("trace steps shrink the graph and never raise k") {
        for (std::uint64_t seed = 0; seed < 30; seed++) {
            Instance inst = corpus_instance(31, seed, CorpusParams{6, 3, 4});
            KernelResult r = kernelize(inst, Bounds::strict());
            Instance replay = inst;
            for (const ReductionStep& step : r.trace) {
                Graph next = apply_step(replay.graph, step);
                CHECK(next.num_vertices() < replay.graph.num_vertices());
                CHECK(step.k_delta <= 0);
                replay.graph = next;
                replay.k += step.k_delta;
            }
            if (r.kernel) {
                CHECK(replay.graph == r.kernel->graph);
                CHECK(replay.k == r.kernel->k);
            }
        }
    }
    SUBCASE("apply_trace replays to the exact kernel") {
        Graph g = disjoint_union(cycle_graph(5), path_graph(4));
        Instance inst(g, 1);
        KernelResult r = kernelize(inst, Bounds::strict());
        REQUIRE(r.kernel.has_value());
        Instance replayed = apply_trace(inst, r.trace);
        CHECK(serialize_edge_list(replayed.graph) == serialize_edge_list(r.kernel->graph));
        CHECK(replayed.k == r.kernel->k);
    }
    SUBCASE("master equivalence, strict mode, small sweep") {
        for (std::uint64_t seed = 0; seed < 120; seed++) {
            Instance inst = corpus_instance(67, seed, CorpusParams{5, 3, 4});
            KernelResult r = kernelize(inst, Bounds::strict());
            SolveLimit lim{inst.k, 50'000'000};
            if (r.kernel)
                CHECK(equivalence_check(inst, *r.kernel, lim));
            else
                CHECK(!is_yes(inst, lim));
        }
    }
    SUBCASE("post-fixpoint structure in strict mode") {
        // once no rule fires: no small structure meets T in exactly one
        // vertex, every singleton component of G-T lies in Z, and no T vertex
        // touches three or more multi-vertex components
        for (std::uint64_t seed = 0; seed < 40; seed++) {
            Instance inst = corpus_instance(71, seed, CorpusParams{6, 3, 4});
            KernelResult r = kernelize(inst, Bounds::strict());
            if (!r.kernel) continue;
            const Instance& fix = *r.kernel;
            auto mr = compute_modulator(fix.graph, fix.k, Bounds::strict());
            REQUIRE(std::holds_alternative<Modulator>(mr));
            const Modulator& m = std::get<Modulator>(mr);

            for (const ForbiddenStructure& fs : find_small_forbidden(fix.graph)) {
                VertexSet in_t;
                std::set_intersection(fs.vertices.begin(), fs.vertices.end(), m.t.begin(),
                                      m.t.end(), std::inserter(in_t, in_t.end()));
                CHECK(in_t.size() != 1);
            }
            VertexSet z = build_z(fix, m);
            Graph rest = fix.graph.without_vertices(m.t);
            std::map<VertexId, int> comp_size;
            std::vector<VertexSet> comps = connected_components(rest);
            for (const VertexSet& comp : comps) {
                if (comp.size() == 1) CHECK(z.count(*comp.begin()) == 1);
                for (VertexId v : comp) comp_size[v] = (int)comp.size();
            }
            for (VertexId t : m.t) {
                std::set<const VertexSet*> touched;
                for (VertexId w : fix.graph.neighbors(t))
                    if (comp_size.count(w) && comp_size[w] >= 2)
                        for (const VertexSet& comp : comps)
                            if (comp.count(w)) touched.insert(&comp);
                CHECK(touched.size() <= 2);
            }
        }
    }
    SUBCASE("master equivalence, aggressive mode with per-step checks") {
        Bounds::Overrides ov;
        ov.delta = 6;
        ov.epsilon = 4;
        ov.strip_l = 9;
        ov.strip_q = 2;
        Bounds aggressive = Bounds::aggressive(ov);
        KernelizeOptions opts;
        opts.verify_each_step = true;
        for (std::uint64_t seed = 0; seed < 60; seed++) {
            Instance inst = corpus_instance(68, seed, CorpusParams{5, 3, 4});
            KernelResult r = kernelize(inst, aggressive, opts);
            CHECK(r.certification_failures.empty());
            SolveLimit lim{inst.k, 50'000'000};
            if (r.kernel)
                CHECK(equivalence_check(inst, *r.kernel, lim));
            else
                CHECK(!is_yes(inst, lim));
        }
    }
}
