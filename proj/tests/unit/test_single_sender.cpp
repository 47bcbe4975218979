#include "support/data.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"

#include "uniprior/error.hpp"
#include "uniprior/single_sender.hpp"

#include <doctest.h>

using namespace uniprior;
using namespace uniprior::testing;

namespace {

Symbol xor_symbol(std::vector<Term> terms) { return {1, std::move(terms)}; }

} // namespace

TEST_CASE("prune the mixed-length instance") {
    const WorkGraph g = WorkGraph::from_instance(data_instance("mixed_lengths.json"));
    const auto [pruned, trace] = prune_all(g);
    REQUIRE(trace.steps.size() == 1);
    CHECK(trace.steps[0].scc == VertexSet{1, 2, 3});
    CHECK(trace.steps[0].selected == 1);
    CHECK(trace.steps[0].removed == std::vector<Arc>{{1, 2}, {1, 3}});
    CHECK(is_grounded(pruned));
}

TEST_CASE("prune leaves a grounded graph unchanged") {
    WorkGraph g(std::vector<int>{1, 1, 1});
    g.add_arc(1, 2);
    g.add_arc(2, 3);
    const auto [pruned, trace] = prune_all(g);
    CHECK(pruned == g);
    CHECK(trace.steps.empty());
}

TEST_CASE("prune two 2-cycles at their smallest vertices") {
    WorkGraph g(std::vector<int>{1, 1, 1, 1});
    for (Arc a : std::vector<Arc>{{1, 2}, {2, 1}, {3, 4}, {4, 3}})
        g.add_arc(a.from, a.to);
    const auto [pruned, trace] = prune_all(g);
    REQUIRE(trace.steps.size() == 2);
    CHECK(trace.steps[0].selected == 1);
    CHECK(trace.steps[1].selected == 3);
    CHECK(is_grounded(pruned));
}

TEST_CASE("lower bound examples") {
    CHECK(lower_bound_single(WorkGraph::from_instance(data_instance("mixed_lengths.json"))) == 6);
    CHECK(lower_bound_single(WorkGraph::from_instance(data_instance("binary_four.json"))) == 3);
    CHECK(lower_bound_single(WorkGraph(std::vector<int>{2, 3, 1})) == 0);
}

TEST_CASE("encode the mixed-length instance") {
    const LinearIndexCode code = encode_single(WorkGraph::from_instance(data_instance("mixed_lengths.json")));
    const std::vector<Symbol> expected{
        xor_symbol({{1, 1}, {2, 1}}), xor_symbol({{2, 1}, {3, 1}}), xor_symbol({{2, 2}}),
        xor_symbol({{3, 2}}),         xor_symbol({{4, 1}}),         xor_symbol({{4, 2}}),
    };
    CHECK(code.symbols == expected);
}

TEST_CASE("encode small graphs") {
    WorkGraph cycle(std::vector<int>{1, 1});
    cycle.add_arc(1, 2);
    cycle.add_arc(2, 1);
    CHECK(encode_single(cycle).symbols == std::vector<Symbol>{xor_symbol({{1, 1}, {2, 1}})});

    WorkGraph chain(std::vector<int>{1, 1, 1});
    chain.add_arc(1, 2);
    chain.add_arc(2, 3);
    CHECK(encode_single(chain).symbols == std::vector<Symbol>{xor_symbol({{1, 1}}), xor_symbol({{2, 1}})});
}

TEST_CASE("solve examples") {
    const SingleSolution s2 = solve_single(data_instance("mixed_lengths.json"));
    CHECK(s2.optimal_length == 6);
    CHECK(s2.lower_bound == 6);
    CHECK(verify_linear(data_instance("mixed_lengths.json"), s2.code).valid);

    const SingleSolution s1 = solve_single(data_instance("binary_four.json"));
    CHECK(s1.optimal_length == 3);
    CHECK(s1.total_weight == 4);
    CHECK(s1.leaf_weight == 0);
    CHECK(s1.leaf_scc_count == 1);
}

TEST_CASE("two binary 2-cycles need two bits, confirmed by the oracle") {
    const Instance inst =
        parse_instance(R"({"n":4,"q":[1,1,1,1],"arcs":[[1,2],[2,1],[3,4],[4,3]],"senders":[[1,2,3,4]]})");
    CHECK(solve_single(inst).optimal_length == 2);
    CHECK(oracle_min_linear(inst).length == 2);
}

TEST_CASE("solve rejects multi-sender instances") {
    CHECK_THROWS_AS(solve_single(data_instance("disjoint_pair.json")), PreconditionError);
}

TEST_CASE("single-sender properties on random weighted graphs") {
    Rng rng(301);
    for (int trial = 0; trial < 400; ++trial) {
        const Instance inst = random_instance(rng, uniform(rng, 1, 8), SenderShape::single, 3);
        const WorkGraph g = WorkGraph::from_instance(inst);
        const auto [pruned, trace] = prune_all(g);
        CHECK(is_grounded(pruned));
        CHECK(pruned.vertex_count() == g.vertex_count());
        for (const Arc& a : pruned.arcs())
            CHECK(g.has_arc(a.from, a.to));
        const int sccs = leaf_scc_count(g);
        CHECK(static_cast<int>(trace.steps.size()) == sccs);
        CHECK(non_leaf_count(pruned) == non_leaf_count(g) - sccs);
        for (const PruneStep& step : trace.steps)
            for (int v : step.scc)
                CHECK(g.weight(step.selected) <= g.weight(v));

        const long long bound = lower_bound_single(g);
        CHECK(bound == predecessor_weight_bound(pruned));
        const LinearIndexCode code = encode_single(g);
        CHECK(static_cast<long long>(code.length()) == bound);
        CHECK(verify_linear(inst, code).valid);
        if (inst.is_binary())
            CHECK(bound == inst.n - static_cast<long long>(leaf_vertices(g).size()) - sccs);

        // Removing arcs never raises the bound.
        WorkGraph smaller = g;
        for (const Arc& a : g.arcs())
            if (coin(rng, 0.3))
                smaller.remove_arc(a.from, a.to);
        CHECK(lower_bound_single(smaller) <= bound);
    }
}

TEST_CASE("optimal length equals the independent brute-force linear optimum") {
    Rng rng(302);
    for (int trial = 0; trial < 120; ++trial) {
        const Instance inst = random_instance(rng, uniform(rng, 1, 4), SenderShape::single);
        CHECK(solve_single(inst).optimal_length == ref_min_linear(inst));
    }
}
