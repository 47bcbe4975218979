#pragma once

#include "uniprior/classify.hpp"
#include "uniprior/code.hpp"
#include "uniprior/graph.hpp"
#include "uniprior/instance.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace uniprior {

enum class StepKind { PruneConnected, PruneNonDegenerated, AppendDisconnected, AppendDegenerated };

std::string_view to_string(StepKind kind);
std::optional<StepKind> step_kind_from_string(std::string_view s);

struct StepRecord {
    StepKind kind = StepKind::PruneConnected;
    VertexSet scc;
    // Prune steps: the vertex whose out-arcs were removed.
    std::optional<int> selected;
    // Append steps: the arc that was added.
    std::optional<Arc> added_arc;
    // AppendDisconnected: the dummy vertex created.
    std::optional<int> dummy;
    // AppendDegenerated: the witness used.
    std::optional<DegeneracyWitness> witness;
    bool operator==(const StepRecord&) const = default;
};

// Adds dummy vertex vertex_count()+1 and an arc from the smallest vertex of
// scc to it. Requires scc to be a message-disconnected leaf SCC.
WorkGraph append_disconnected(const WorkGraph& g, const MessageGraph& u, const VertexSet& scc);

// Adds the arc w.v_inside -> w.target. Throws PreconditionError on an invalid witness.
WorkGraph append_degenerated(const WorkGraph& g, const MessageGraph& u, const VertexSet& scc,
                             const DegeneracyWitness& w);

// Removes all out-arcs of `vertex` (default: smallest vertex of scc).
// Requires a leaf SCC on a unit-weight graph.
WorkGraph prune_leaf_scc(const WorkGraph& g, const VertexSet& scc, std::optional<int> vertex = std::nullopt);

struct LowerBoundReport {
    int bound = 0;
    int v_out_original = 0;
    int connected_count = 0;
    int iterations = 0;
    // Leaf SCCs left when Initialization finished; zero means the bound is tight.
    int leaf_sccs_after_init = 0;
    std::vector<StepRecord> steps;
    WorkGraph final_graph;
    bool operator==(const LowerBoundReport&) const = default;
};

// Combined appending-pruning algorithm on a valid binary instance.
LowerBoundReport run_algorithm2(const Instance& inst);

struct ExhaustiveCaps {
    std::uint64_t max_states = 1'000'000;
};

struct ExhaustiveResult {
    int bound = 0;
    std::uint64_t states = 0;
    // The state cap was hit; bound is the best over explored sequences.
    bool partial = false;
    bool operator==(const ExhaustiveResult&) const = default;
};

// Maximum V_out of the grounded result over all prune/append sequences,
// branching on the leaf SCC operated on, the pruned vertex, and the
// degeneracy witness. States are memoized by their arc set.
ExhaustiveResult exhaustive_lower_bound(const Instance& inst, const ExhaustiveCaps& caps = {});

struct ConnectingTree {
    VertexSet vertices;
    // Tree edges {i, j}, i < j, in breadth-first discovery order.
    std::vector<std::pair<int, int>> edges;
    bool operator==(const ConnectingTree&) const = default;
};

struct TreeCaps {
    // Exact packing search up to this many vertices; greedy beyond.
    int exact_vertex_limit = 12;
};

struct TreeSearchResult {
    std::vector<ConnectingTree> trees;
    bool heuristic = false;
    bool operator==(const TreeSearchResult&) const = default;
};

// Vertices of message-connected leaf SCCs of the instance's own graph.
VertexSet message_connected_vertices(const Instance& inst);

// Every vertex set that is closed under out-arcs with no leaf, avoids
// `forbidden`, and induces a connected subgraph of u. Sets are bitmasks over
// vertices 1..n (bit v-1); requires n <= 30. Sorted ascending.
std::vector<std::uint32_t> closed_connected_sets(const WorkGraph& g, const MessageGraph& u,
                                                 const VertexSet& forbidden,
                                                 Execution exec = Execution::parallel);

// Checks every ConnectingTree invariant against the instance.
bool tree_is_valid(const Instance& inst, const ConnectingTree& t);

TreeSearchResult find_connecting_trees(const Instance& inst, const TreeCaps& caps = {});

// Pairwise-XOR code over the trees and message-connected leaf SCCs, plus
// uncoded bits for every other non-leaf vertex.
LinearIndexCode encode_multi(const Instance& inst, const std::vector<ConnectingTree>& trees);

enum class TightReason { NoLeafSccAfterInit, DisjointSenders, BoundsCoincide };

std::string_view to_string(TightReason r);
std::optional<TightReason> tight_reason_from_string(std::string_view s);

struct BoundCaps {
    bool exhaustive = false;
    ExhaustiveCaps exhaustive_caps;
    TreeCaps tree_caps;
};

struct BoundReport {
    int lower = 0;
    int upper = 0;
    bool tight = false;
    std::optional<TightReason> tight_reason;
    LowerBoundReport lower_report;
    std::optional<ExhaustiveResult> exhaustive;
    std::vector<ConnectingTree> trees;
    bool trees_heuristic = false;
    LinearIndexCode code;
    bool operator==(const BoundReport&) const = default;
};

BoundReport bound_multi(const Instance& inst, const BoundCaps& caps = {});

} // namespace uniprior
