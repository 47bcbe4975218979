#include "support/data.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"

#include "uniprior/error.hpp"
#include "uniprior/graph.hpp"
#include "uniprior/single_sender.hpp"

#include <doctest.h>

using namespace uniprior;
using namespace uniprior::testing;

namespace {

WorkGraph unit_graph(int n, const std::vector<Arc>& arcs) {
    WorkGraph g(std::vector<int>(n, 1));
    for (const Arc& a : arcs)
        g.add_arc(a.from, a.to);
    return g;
}

} // namespace

TEST_CASE("scc partition of a 3-cycle") {
    const SccPartition p = scc_partition(unit_graph(3, {{1, 2}, {2, 3}, {3, 1}}));
    REQUIRE(p.components.size() == 1);
    CHECK(p.components[0] == VertexSet{1, 2, 3});
    CHECK(p.leaf_flags[0]);
}

TEST_CASE("scc partition of the mixed-length instance") {
    const WorkGraph g = WorkGraph::from_instance(data_instance("mixed_lengths.json"));
    const SccPartition p = scc_partition(g);
    CHECK(p.components == std::vector<VertexSet>{{1, 2, 3}, {4}, {5}});
    CHECK(p.leaf_flags == std::vector<bool>{true, false, false});
    CHECK(leaf_sccs(g) == std::vector<VertexSet>{{1, 2, 3}});
}

TEST_CASE("chain has no leaf SCC") {
    const SccPartition p = scc_partition(unit_graph(3, {{1, 2}, {2, 3}}));
    CHECK(p.components.size() == 3);
    CHECK(p.leaf_count() == 0);
}

TEST_CASE("leaf vertices") {
    CHECK(leaf_vertices(WorkGraph::from_instance(data_instance("mixed_lengths.json"))) == VertexSet{5});
    CHECK(leaf_vertices(unit_graph(2, {{1, 2}, {2, 1}})).empty());
    CHECK(leaf_vertices(unit_graph(1, {})) == VertexSet{1});
}

TEST_CASE("predecessors") {
    CHECK(predecessors(unit_graph(3, {{1, 2}, {2, 3}}), 3) == VertexSet{1, 2});
    CHECK(predecessors(unit_graph(2, {{1, 2}, {2, 1}}), 1) == VertexSet{1, 2});
    CHECK(predecessors(WorkGraph::from_instance(data_instance("mixed_lengths.json")), 5) == VertexSet{4});
    CHECK_THROWS_AS(predecessors(unit_graph(2, {}), 3), PreconditionError);
}

TEST_CASE("groundedness") {
    CHECK(is_grounded(unit_graph(3, {{1, 2}, {2, 3}})));
    CHECK_FALSE(is_grounded(unit_graph(2, {{1, 2}, {2, 1}})));
    const WorkGraph g = WorkGraph::from_instance(data_instance("mixed_lengths.json"));
    CHECK_FALSE(is_grounded(g));
    CHECK(is_grounded(prune_all(g).first));
}

TEST_CASE("predecessor weight bound") {
    CHECK(predecessor_weight_bound(unit_graph(3, {{1, 2}, {2, 3}})) == 2);
    CHECK(predecessor_weight_bound(unit_graph(2, {{1, 2}, {2, 1}})) == 0);
    const WorkGraph g = WorkGraph::from_instance(data_instance("mixed_lengths.json"));
    CHECK(predecessor_weight_bound(prune_all(g).first) == 6);
}

TEST_CASE("work graph dummies and arc rules") {
    WorkGraph g = unit_graph(2, {{1, 2}, {2, 1}});
    const int d = g.add_dummy();
    CHECK(d == 3);
    CHECK(g.is_dummy(3));
    CHECK(g.weight(3) == 0);
    g.add_arc(1, 3);
    CHECK(g.has_arc(1, 3));
    CHECK_THROWS_AS(g.add_arc(3, 1), PreconditionError);
    CHECK_THROWS_AS(g.add_arc(1, 1), PreconditionError);
    CHECK_THROWS_AS(g.add_arc(1, 4), PreconditionError);
    CHECK(non_leaf_count(g) == 2);
    CHECK(g.remove_out_arcs(1) == std::vector<Arc>{{1, 2}, {1, 3}});
    CHECK(g.is_leaf(1));
}

TEST_CASE("components partition the vertices and the condensation is acyclic") {
    Rng rng(201);
    for (int trial = 0; trial < 500; ++trial) {
        const WorkGraph g = random_digraph(rng, uniform(rng, 1, 10), 0.25);
        const SccPartition p = scc_partition(g);
        const Reach r(g);
        std::vector<int> seen(g.vertex_count() + 1, 0);
        for (std::size_t c = 0; c < p.components.size(); ++c) {
            for (int v : p.components[c]) {
                ++seen[v];
                CHECK(p.component_of[v] == static_cast<int>(c));
            }
            if (c > 0)
                CHECK(p.components[c - 1].front() < p.components[c].front());
        }
        for (int v = 1; v <= g.vertex_count(); ++v) {
            CHECK(seen[v] == 1);
            for (int w = 1; w <= g.vertex_count(); ++w) {
                // Same component exactly when mutually reachable.
                const bool same = p.component_of[v] == p.component_of[w];
                if (v != w)
                    CHECK(same == (r.path[v][w] && r.path[w][v]));
            }
        }
        for (std::size_t c = 0; c < p.components.size(); ++c) {
            bool leaf = p.components[c].size() >= 2;
            for (int v : p.components[c])
                for (int w : g.out(v))
                    leaf = leaf && p.component_of[w] == static_cast<int>(c);
            CHECK(p.leaf_flags[c] == leaf);
        }
    }
}

TEST_CASE("grounded iff no leaf SCC, against the reachability reference") {
    Rng rng(202);
    for (int trial = 0; trial < 1000; ++trial) {
        const WorkGraph g = random_digraph(rng, uniform(rng, 1, 10), std::uniform_real_distribution<>(0.05, 0.5)(rng));
        const bool grounded = is_grounded(g);
        CHECK(grounded == (leaf_scc_count(g) == 0));
        CHECK(grounded == ref_grounded(g));
        CHECK(ref_has_leaf_scc(g) == (leaf_scc_count(g) > 0));
    }
}

TEST_CASE("predecessors are transitive and shrink under arc removal") {
    Rng rng(203);
    for (int trial = 0; trial < 300; ++trial) {
        WorkGraph g = random_digraph(rng, uniform(rng, 2, 8), 0.3);
        const int n = g.vertex_count();
        std::vector<VertexSet> pred(n + 1);
        for (int v = 1; v <= n; ++v)
            pred[v] = predecessors(g, v);
        for (int w = 1; w <= n; ++w)
            for (int v : pred[w])
                for (int u : pred[v])
                    CHECK(set_contains(pred[w], u));
        const auto arcs = g.arcs();
        if (arcs.empty())
            continue;
        const Arc drop = arcs[uniform(rng, 0, static_cast<int>(arcs.size()) - 1)];
        g.remove_arc(drop.from, drop.to);
        for (int v = 1; v <= n; ++v)
            for (int u : predecessors(g, v))
                CHECK(set_contains(pred[v], u));
    }
}
