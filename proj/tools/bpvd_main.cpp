// bpvd: kernelization toolkit for bipartite permutation vertex deletion.
//
// Subcommands: recognize, forbidden, modulator, kernelize, solve, generate,
// verify, replay.  Graphs travel as edge-list text (see core/edge_io.hpp),
// results as JSON on stdout, diagnostics on stderr.
// Exit codes: 0 success / YES-kernel, 1 NO-instance, 2 usage or I/O error,
// 3 resource limit.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "bpvd/edge_io.hpp"
#include "bpvd/errors.hpp"
#include "bpvd/forbidden.hpp"
#include "bpvd/generator.hpp"
#include "bpvd/oracle.hpp"
#include "bpvd/ordering.hpp"
#include "bpvd/reduction.hpp"
#include "bpvd/sunflower.hpp"

using json = nlohmann::json;
using namespace bpvd;

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

Graph load_graph(const std::string& path) {
    if (path.empty() || path == "-") return parse_edge_list(std::cin);
    return parse_edge_list_file(path);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

long long default_node_budget() {
    if (const char* env = std::getenv("BPVD_NODE_BUDGET")) {
        long long v = std::atoll(env);
        if (v > 0) return v;
    }
    return 50'000'000;
}

json ids_json(const VertexSet& s) {
    json a = json::array();
    for (VertexId v : s) a.push_back(v);
    return a;
}

json ids_json(const std::vector<VertexId>& s) {
    json a = json::array();
    for (VertexId v : s) a.push_back(v);
    return a;
}

VertexSet ids_from_json(const json& a) {
    VertexSet s;
    for (const auto& v : a) s.insert(v.get<VertexId>());
    return s;
}

json structure_json(const ForbiddenStructure& f) {
    return json{{"kind", f.kind_name()}, {"vertices", ids_json(f.vertices)}};
}

json step_json(const ReductionStep& s) {
    json evidence;
    if (s.evidence.structure) evidence["structure"] = structure_json(*s.evidence.structure);
    if (s.evidence.cut) evidence["cut"] = ids_json(*s.evidence.cut);
    if (s.evidence.twin_neighborhood)
        evidence["twin_neighborhood"] = ids_json(*s.evidence.twin_neighborhood);
    if (!s.evidence.note.empty()) evidence["note"] = s.evidence.note;
    return json{{"rule", s.rule},
                {"removed", ids_json(s.removed)},
                {"added", ids_json(s.added)},
                {"k_delta", s.k_delta},
                {"evidence", evidence}};
}

ReductionStep step_from_json(const json& j) {
    ReductionStep s;
    s.rule = j.at("rule").get<std::string>();
    s.removed = ids_from_json(j.at("removed"));
    s.added = ids_from_json(j.at("added"));
    s.k_delta = j.at("k_delta").get<int>();
    const json& e = j.at("evidence");
    if (e.contains("cut")) s.evidence.cut = ids_from_json(e["cut"]);
    if (e.contains("twin_neighborhood"))
        s.evidence.twin_neighborhood = ids_from_json(e["twin_neighborhood"]);
    if (e.contains("note")) s.evidence.note = e["note"].get<std::string>();
    return s;
}

json trace_json(const KernelResult& r) {
    json steps = json::array();
    for (const ReductionStep& s : r.trace) steps.push_back(step_json(s));
    json modulators = json::array();
    for (const Modulator& m : r.modulator_history)
        modulators.push_back(json{{"T", ids_json(m.t)},
                                  {"S", ids_json(m.s_part)},
                                  {"X", ids_json(m.x_part)}});
    return json{{"steps", steps}, {"modulators", modulators}};
}

Bounds bounds_from_flags(const std::string& mode, const std::string& bounds_file) {
    if (mode == "strict") return Bounds::strict();
    Bounds::Overrides ov;
    // defaults keep the override rules exercisable at desk scale
    ov.delta = 6;
    ov.epsilon = 4;
    ov.strip_l = 9;
    ov.strip_q = 2;
    if (!bounds_file.empty()) {
        std::ifstream in(bounds_file);
        if (!in) throw std::runtime_error("cannot open bounds file " + bounds_file);
        json j = json::parse(in);
        if (j.contains("delta")) ov.delta = BigInt(j["delta"].get<long long>());
        if (j.contains("epsilon")) ov.epsilon = BigInt(j["epsilon"].get<long long>());
        if (j.contains("phi")) ov.phi = BigInt(j["phi"].get<long long>());
        if (j.contains("l")) ov.strip_l = BigInt(j["l"].get<long long>());
        if (j.contains("q")) ov.strip_q = BigInt(j["q"].get<long long>());
    }
    return Bounds::aggressive(ov);
}

int cmd_generate(const GenParams& p, const std::string& out) {
    Graph g = perturb(gen_bp(p), p);
    write_text(out, serialize_edge_list(g));
    return kExitYes;
}

int cmd_recognize(const std::string& in) {
    Graph g = load_graph(in);
    auto rec = compute_strong_ordering(g);
    json out;
    if (std::holds_alternative<StrongOrdering>(rec)) {
        const StrongOrdering& so = std::get<StrongOrdering>(rec);
        out["bipartite_permutation"] = true;
        out["components"] = json::array();
        for (const ComponentOrdering& co : so.components)
            out["components"].push_back(
                json{{"order_u", ids_json(co.order_u)}, {"order_w", ids_json(co.order_w)}});
    } else {
        const auto& verdict = std::get<NotBipartitePermutation>(rec);
        out["bipartite_permutation"] = false;
        if (verdict.witness) out["witness"] = structure_json(*verdict.witness);
    }
    std::cout << out.dump(2) << '\n';
    return kExitYes;
}

int cmd_forbidden(const std::string& in, bool first_only, long long budget) {
    Graph g = load_graph(in);
    EnumerationOptions opts;
    opts.first_only = first_only;
    opts.step_budget = budget;
    for (const ForbiddenStructure& f : find_small_forbidden(g, opts))
        std::cout << structure_json(f).dump() << '\n';
    return kExitYes;
}

int cmd_modulator(const std::string& in, int k) {
    Graph g = load_graph(in);
    std::vector<ForbiddenStructure> structures = find_small_forbidden(g);
    std::vector<VertexSet> sets;
    for (const auto& f : structures) sets.push_back(f.vertices);
    auto mr = compute_modulator(g, k, Bounds::strict(), sets);
    if (std::holds_alternative<NoInstanceVerdict>(mr)) {
        std::cout << json{{"no_instance", true}}.dump(2) << '\n';
        return kExitNo;
    }
    const Modulator& m = std::get<Modulator>(mr);
    SetFamily family(sets, 12);
    SetFamily reduced = reduce_family(family, k);
    std::cout << json{{"T", ids_json(m.t)},
                      {"S", ids_json(m.s_part)},
                      {"X", ids_json(m.x_part)},
                      {"family_size", family.size()},
                      {"reduced_family_size", reduced.size()}}
                     .dump(2)
              << '\n';
    return kExitYes;
}

int cmd_solve(const std::string& in, int k, long long node_budget) {
    Graph g = load_graph(in);
    SolveLimit limit{k, node_budget};
    SolveStats stats;
    auto x = exact_min_deletion(g, limit, &stats);
    if (!x) {
        std::cout << json{{"no", true}, {"nodes", stats.nodes}}.dump(2) << '\n';
        return kExitNo;
    }
    std::cout << json{{"deletion_set", ids_json(*x)}, {"nodes", stats.nodes}}.dump(2) << '\n';
    return kExitYes;
}

int cmd_kernelize(const std::string& in, int k, const std::string& mode,
                  const std::string& bounds_file, bool verify_oracle,
                  const std::string& trace_out, const std::string& out) {
    Graph g = load_graph(in);
    Bounds b = bounds_from_flags(mode, bounds_file);
    KernelizeOptions opts;
    opts.verify_each_step = verify_oracle;
    opts.oracle_limit.node_budget = default_node_budget();
    KernelResult r = kernelize(Instance(g, k), b, opts);
    if (!trace_out.empty()) write_text(trace_out, trace_json(r).dump(2) + "\n");
    json summary;
    summary["outcome"] = r.kernel ? "kernel" : "no-instance";
    summary["steps"] = r.trace.size();
    if (!r.certification_failures.empty())
        summary["certification_failures"] = r.certification_failures;
    if (r.kernel) {
        summary["n"] = r.kernel->graph.num_vertices();
        summary["k"] = r.kernel->k;
        if (!out.empty()) write_text(out, serialize_edge_list(r.kernel->graph));
    }
    std::cout << summary.dump(2) << '\n';
    return r.kernel ? kExitYes : kExitNo;
}

int cmd_replay(const std::string& in, const std::string& trace_path, const std::string& out) {
    Graph g = load_graph(in);
    std::ifstream tin(trace_path);
    if (!tin) throw std::runtime_error("cannot open trace " + trace_path);
    json t = json::parse(tin);
    std::vector<ReductionStep> steps;
    for (const auto& js : t.at("steps")) steps.push_back(step_from_json(js));
    Graph result = g;
    for (const ReductionStep& s : steps) result = apply_step(result, s);
    write_text(out, serialize_edge_list(result));
    return kExitYes;
}

int cmd_verify(int count, std::uint64_t seed, int max_side, int max_k, const std::string& mode,
               const std::string& bounds_file, long long node_budget, bool inject_fault) {
    Bounds b = bounds_from_flags(mode, bounds_file);
    CorpusParams cp;
    cp.max_side = max_side;
    cp.max_k = max_k;

    struct Outcome {
        bool checked = false;
        std::string resource_note;
        std::optional<json> failure;
    };
    std::vector<Outcome> outcomes((std::size_t)count);

    // instances are independent and all core operations are pure, so the
    // batch fans out over a worker per core; outcomes merge in index order
    auto run_one = [&](int i) {
        Outcome& out = outcomes[(std::size_t)i];
        Instance inst = corpus_instance(seed, (std::uint64_t)i, cp);
        try {
            KernelizeOptions opts;
            opts.verify_each_step = !b.is_strict();
            opts.oracle_limit.node_budget = node_budget;
            KernelResult r = kernelize(inst, b, opts);
            if (inject_fault && r.kernel) // exercises the failure reporting path
                r.kernel = Instance(Graph{}, r.kernel->k);
            SolveLimit lim{inst.k, node_budget};
            bool ok;
            if (r.kernel) {
                ok = equivalence_check(inst, *r.kernel, lim) && r.certification_failures.empty();
            } else {
                ok = !is_yes(inst, lim);
            }
            out.checked = true;
            if (!ok) {
                // greedy one-pass minimization of the failing instance
                Instance small = inst;
                for (VertexId v : VertexSet(inst.graph.vertices())) {
                    if (!small.graph.has_vertex(v)) continue;
                    try {
                        Instance cand(small.graph.without_vertex(v), small.k);
                        KernelResult rc = kernelize(cand, b, opts);
                        bool still_bad;
                        if (rc.kernel)
                            still_bad = !equivalence_check(cand, *rc.kernel, lim) ||
                                        !rc.certification_failures.empty();
                        else
                            still_bad = is_yes(cand, lim);
                        if (still_bad) small = std::move(cand);
                    } catch (const ResourceLimitError&) {
                        // keep the current candidate; minimization is best-effort
                    }
                }
                out.failure = json{{"seed", seed},
                                   {"index", i},
                                   {"trace", trace_json(r)},
                                   {"minimized", serialize_edge_list(small.graph)},
                                   {"minimized_k", small.k}};
            }
        } catch (const ResourceLimitError& e) {
            out.resource_note = e.what();
        }
    };

    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 16);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int i; (i = next.fetch_add(1)) < count;) run_one(i);
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; w++) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    json failures = json::array();
    int checked = 0, resource_skips = 0;
    for (int i = 0; i < count; i++) {
        const Outcome& out = outcomes[(std::size_t)i];
        if (out.checked) checked++;
        if (!out.resource_note.empty()) {
            resource_skips++;
            std::cerr << "instance " << i << ": " << out.resource_note << '\n';
        }
        if (out.failure) failures.push_back(*out.failure);
    }
    std::cout << json{{"checked", checked},
                      {"resource_skips", resource_skips},
                      {"failures", failures}}
                     .dump(2)
              << '\n';
    return failures.empty() ? kExitYes : kExitNo;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kernelization toolkit for bipartite permutation vertex deletion"};
    app.require_subcommand(1);
    bool json_flag = false;
    app.add_flag("--json", json_flag, "emit JSON (the default; kept for scripts)");

    // generate
    auto* gen = app.add_subcommand("generate", "emit a seeded (near-)BP graph as an edge list");
    GenParams gp;
    std::string gen_out = "-";
    gen->add_option("--seed", gp.seed, "rng seed");
    gen->add_option("--nu", gp.n_u, "U-side size")->required();
    gen->add_option("--nw", gp.n_w, "W-side size")->required();
    gen->add_option("--density", gp.density, "window density in [0,1]");
    gen->add_option("--perturb", gp.perturb_ops, "number of perturbation ops");
    gen->add_option("-o,--out", gen_out, "output path (- for stdout)");

    // recognize
    auto* rec = app.add_subcommand("recognize", "strong ordering or a not-BP certificate");
    std::string rec_in = "-";
    rec->add_option("input", rec_in, "edge-list file (- for stdin)");

    // forbidden
    auto* forb = app.add_subcommand("forbidden", "enumerate small forbidden structures");
    std::string forb_in = "-";
    bool forb_first = false;
    long long forb_budget = SearchBudget::kDefaultSteps;
    forb->add_option("input", forb_in, "edge-list file (- for stdin)");
    forb->add_flag("--first", forb_first, "stop after the first structure");
    forb->add_option("--budget", forb_budget, "search step budget");

    // modulator
    auto* mod = app.add_subcommand("modulator", "compute the modulator T = S ∪ X");
    std::string mod_in = "-";
    int mod_k = 0;
    mod->add_option("input", mod_in, "edge-list file (- for stdin)");
    mod->add_option("--k", mod_k, "budget")->required();

    // solve
    auto* sol = app.add_subcommand("solve", "exact minimum deletion set");
    std::string sol_in = "-";
    int sol_k = 0;
    long long sol_budget = default_node_budget();
    sol->add_option("input", sol_in, "edge-list file (- for stdin)");
    sol->add_option("--k", sol_k, "budget")->required();
    sol->add_option("--node-budget", sol_budget, "search node budget");

    // kernelize
    auto* ker = app.add_subcommand("kernelize", "apply the reduction rules to a fixpoint");
    std::string ker_in = "-", ker_mode = "strict", ker_bounds, ker_trace, ker_out;
    int ker_k = 0;
    bool ker_verify = false;
    ker->add_option("input", ker_in, "edge-list file (- for stdin)");
    ker->add_option("--k", ker_k, "budget")->required();
    ker->add_option("--mode", ker_mode, "strict|aggressive")
        ->check(CLI::IsMember({"strict", "aggressive"}));
    ker->add_option("--bounds-file", ker_bounds, "JSON bound overrides (aggressive mode)");
    ker->add_flag("--verify-oracle", ker_verify, "cross-check every step (desk scale)");
    ker->add_option("--trace-out", ker_trace, "write the trace JSON here");
    ker->add_option("-o,--out", ker_out, "write the kernel edge list here");

    // replay
    auto* rep = app.add_subcommand("replay", "re-apply a trace to an input graph");
    std::string rep_in = "-", rep_trace, rep_out = "-";
    rep->add_option("input", rep_in, "edge-list file (- for stdin)");
    rep->add_option("--trace", rep_trace, "trace JSON")->required();
    rep->add_option("-o,--out", rep_out, "output path (- for stdout)");

    // verify
    auto* ver = app.add_subcommand("verify", "fuzz kernelize against the exact oracle");
    int ver_count = 100, ver_side = 6, ver_k = 3;
    std::uint64_t ver_seed = 1;
    std::string ver_mode = "strict", ver_bounds;
    long long ver_budget = default_node_budget();
    ver->add_option("--count", ver_count, "number of instances");
    ver->add_option("--seed", ver_seed, "base seed");
    ver->add_option("--max-side", ver_side, "max generator side size");
    ver->add_option("--max-k", ver_k, "max budget");
    ver->add_option("--mode", ver_mode, "strict|aggressive")
        ->check(CLI::IsMember({"strict", "aggressive"}));
    ver->add_option("--bounds-file", ver_bounds, "JSON bound overrides");
    ver->add_option("--node-budget", ver_budget, "oracle node budget");
    bool ver_fault = false;
    ver->add_flag("--inject-fault", ver_fault,
                  "corrupt every kernel before checking (harness self-test)")
        ->group(""); // hidden

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) return cmd_generate(gp, gen_out);
        if (*rec) return cmd_recognize(rec_in);
        if (*forb) return cmd_forbidden(forb_in, forb_first, forb_budget);
        if (*mod) return cmd_modulator(mod_in, mod_k);
        if (*sol) return cmd_solve(sol_in, sol_k, sol_budget);
        if (*ker)
            return cmd_kernelize(ker_in, ker_k, ker_mode, ker_bounds, ker_verify, ker_trace,
                                 ker_out);
        if (*rep) return cmd_replay(rep_in, rep_trace, rep_out);
        if (*ver)
            return cmd_verify(ver_count, ver_seed, ver_side, ver_k, ver_mode, ver_bounds,
                              ver_budget, ver_fault);
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return kExitResource;
    } catch (const EdgeListParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
