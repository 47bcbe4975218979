#pragma once

#include "uniprior/code.hpp"
#include "uniprior/graph.hpp"

#include <utility>
#include <vector>

namespace uniprior {

struct PruneStep {
    VertexSet scc;
    int selected = 0;
    std::vector<Arc> removed;
    bool operator==(const PruneStep&) const = default;
};

struct PruneTrace {
    std::vector<PruneStep> steps;
    bool operator==(const PruneTrace&) const = default;
};

// Makes one minimum-weight vertex (smallest id on ties) of every leaf SCC a
// leaf by removing its out-arcs. The result is grounded.
std::pair<WorkGraph, PruneTrace> prune_all(const WorkGraph& g);

// sum q - sum over leaves q - sum over leaf SCCs of their minimum q.
long long lower_bound_single(const WorkGraph& g);

// Cyclic codes on the leaf SCCs plus uncoded bits for the other non-leaf
// vertices; every symbol is attributed to `sender`.
LinearIndexCode encode_single(const WorkGraph& g, int sender = 1);

struct SingleSolution {
    long long optimal_length = 0;
    long long lower_bound = 0;
    long long total_weight = 0;
    long long leaf_weight = 0;
    long long leaf_scc_savings = 0;
    int leaf_scc_count = 0;
    LinearIndexCode code;
    PruneTrace trace;
    bool operator==(const SingleSolution&) const = default;
};

// Requires a valid instance with exactly one sender.
SingleSolution solve_single(const Instance& inst);

} // namespace uniprior
