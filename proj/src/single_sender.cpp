#include "uniprior/single_sender.hpp"

#include "uniprior/error.hpp"

#include <algorithm>

namespace uniprior {

namespace {

void require_no_dummies(const WorkGraph& g) {
    if (g.vertex_count() != g.original_count())
        throw PreconditionError("single-sender operations take graphs without dummy vertices");
}

int min_weight_vertex(const WorkGraph& g, const VertexSet& scc) {
    int best = scc.front();
    for (int v : scc)
        if (g.weight(v) < g.weight(best))
            best = v;
    return best;
}

} // namespace

std::pair<WorkGraph, PruneTrace> prune_all(const WorkGraph& g) {
    require_no_dummies(g);
    WorkGraph pruned = g;
    PruneTrace trace;
    // Leaf SCCs are disjoint and have no arcs between them, so pruning one
    // leaves the others intact; all can be taken from the original partition.
    for (const VertexSet& scc : leaf_sccs(g)) {
        PruneStep step;
        step.scc = scc;
        step.selected = min_weight_vertex(g, scc);
        step.removed = pruned.remove_out_arcs(step.selected);
        trace.steps.push_back(std::move(step));
    }
    return {std::move(pruned), std::move(trace)};
}

long long lower_bound_single(const WorkGraph& g) {
    require_no_dummies(g);
    long long total = 0;
    for (int v = 1; v <= g.vertex_count(); ++v)
        total += g.weight(v);
    for (int v : leaf_vertices(g))
        total -= g.weight(v);
    for (const VertexSet& scc : leaf_sccs(g))
        total -= g.weight(min_weight_vertex(g, scc));
    return total;
}

LinearIndexCode encode_single(const WorkGraph& g, int sender) {
    require_no_dummies(g);
    LinearIndexCode code;
    std::vector<Term> uncoded;
    std::vector<bool> in_leaf_scc(g.vertex_count() + 1, false);

    for (const VertexSet& scc : leaf_sccs(g)) {
        const int qmin = g.weight(min_weight_vertex(g, scc));
        for (int b = 1; b <= qmin; ++b)
            for (std::size_t k = 0; k + 1 < scc.size(); ++k)
                code.symbols.push_back({sender, {{scc[k], b}, {scc[k + 1], b}}});
        for (int v : scc) {
            in_leaf_scc[v] = true;
            for (int b = qmin + 1; b <= g.weight(v); ++b)
                uncoded.push_back({v, b});
        }
    }
    for (int v = 1; v <= g.vertex_count(); ++v) {
        if (in_leaf_scc[v] || g.is_leaf(v))
            continue;
        for (int b = 1; b <= g.weight(v); ++b)
            uncoded.push_back({v, b});
    }
    std::sort(uncoded.begin(), uncoded.end());
    for (const Term& t : uncoded)
        code.symbols.push_back({sender, {t}});
    return code;
}

SingleSolution solve_single(const Instance& inst) {
    require_valid(inst);
    if (inst.senders.size() != 1)
        throw PreconditionError("solve_single needs exactly one sender, got " + std::to_string(inst.senders.size()) +
                                "; use the multi-sender bound instead");
    const WorkGraph g = WorkGraph::from_instance(inst);

    SingleSolution sol;
    for (int v = 1; v <= g.vertex_count(); ++v)
        sol.total_weight += g.weight(v);
    for (int v : leaf_vertices(g))
        sol.leaf_weight += g.weight(v);
    const auto sccs = leaf_sccs(g);
    sol.leaf_scc_count = static_cast<int>(sccs.size());
    for (const VertexSet& scc : sccs)
        sol.leaf_scc_savings += g.weight(min_weight_vertex(g, scc));
    sol.lower_bound = lower_bound_single(g);
    sol.code = encode_single(g, 1);
    sol.optimal_length = static_cast<long long>(sol.code.length());
    sol.trace = prune_all(g).second;
    if (sol.optimal_length != sol.lower_bound)
        throw Error("internal: single-sender code length differs from the lower bound");
    return sol;
}

} // namespace uniprior
