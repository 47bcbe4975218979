#include "uniprior/multi_sender.hpp"

#include "uniprior/error.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace uniprior {

namespace {

constexpr std::array<std::pair<StepKind, std::string_view>, 4> kStepNames{{
    {StepKind::PruneConnected, "PruneConnected"},
    {StepKind::PruneNonDegenerated, "PruneNonDegenerated"},
    {StepKind::AppendDisconnected, "AppendDisconnected"},
    {StepKind::AppendDegenerated, "AppendDegenerated"},
}};

void require_unit_weights(const WorkGraph& g) {
    for (int v = 1; v <= g.original_count(); ++v)
        if (g.weight(v) != 1)
            throw PreconditionError("pruning a leaf SCC requires unit weights; vertex " + std::to_string(v) +
                                    " has weight " + std::to_string(g.weight(v)));
}

struct Engine {
    WorkGraph g;
    MessageGraph u;
    std::vector<StepRecord> steps;

    void prune(const VertexSet& scc, int vertex, StepKind kind) {
        g.remove_out_arcs(vertex);
        steps.push_back({kind, scc, vertex, std::nullopt, std::nullopt, std::nullopt});
    }

    // Appends every message-disconnected leaf SCC, then degenerated ones one
    // at a time, until neither kind is left.
    void append_all() {
        for (;;) {
            bool changed = false;
            for (const VertexSet& scc : leaf_sccs(g)) {
                if (message_connected_within(u, scc) || !disconnected_pair(u, scc, g.vertex_count()))
                    continue;
                const int dummy = g.add_dummy();
                g.add_arc(scc.front(), dummy);
                steps.push_back({StepKind::AppendDisconnected, scc, std::nullopt, Arc{scc.front(), dummy}, dummy,
                                 std::nullopt});
                changed = true;
            }
            for (bool again = true; again;) {
                again = false;
                for (const VertexSet& scc : leaf_sccs(g)) {
                    const LeafSccClass c = classify_leaf_scc(g, u, scc);
                    if (c.kind != LeafSccKind::Degenerated)
                        continue;
                    const DegeneracyWitness& w = *c.degeneracy;
                    g.add_arc(w.v_inside, w.target);
                    steps.push_back({StepKind::AppendDegenerated, scc, std::nullopt, Arc{w.v_inside, w.target},
                                     std::nullopt, w});
                    again = changed = true;
                    break;
                }
            }
            if (!changed)
                return;
        }
    }
};

// Number of other non-degenerated leaf SCCs that turn degenerated once scc
// is pruned at its smallest vertex.
int degeneration_gain(const WorkGraph& g, const MessageGraph& u, const VertexSet& scc,
                      const std::vector<VertexSet>& candidates) {
    WorkGraph next = g;
    next.remove_out_arcs(scc.front());
    const auto still_leaf = leaf_sccs(next);
    int gain = 0;
    for (const VertexSet& other : candidates) {
        if (other == scc || std::find(still_leaf.begin(), still_leaf.end(), other) == still_leaf.end())
            continue;
        if (classify_leaf_scc(next, u, other).kind == LeafSccKind::Degenerated)
            ++gain;
    }
    return gain;
}

using StateKey = std::vector<std::pair<int, int>>;

// Arc list with every dummy endpoint collapsed to 0: dummies are interchangeable
// leaves, so states differing only in dummy ids behave identically.
StateKey state_key(const WorkGraph& g) {
    StateKey key;
    for (const Arc& a : g.arcs())
        key.emplace_back(a.from, g.is_dummy(a.to) ? 0 : a.to);
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    return key;
}

class SequenceSearch {
public:
    SequenceSearch(const MessageGraph& u, const ExhaustiveCaps& caps) : u_(u), caps_(caps) {}

    int best(const WorkGraph& g) {
        const int v_out = non_leaf_count(g);
        const auto sccs = leaf_sccs(g);
        if (sccs.empty())
            return v_out;
        StateKey key = state_key(g);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        const bool capped = memo_.size() >= caps_.max_states;
        if (capped)
            partial_ = true;

        int result = -1;
        // V_out never grows along a sequence, so reaching it ends the search.
        auto consider = [&](const WorkGraph& child) {
            result = std::max(result, best(child));
            return capped || result == v_out;
        };
        bool done = false;
        for (const VertexSet& scc : sccs) {
            const LeafSccClass c = classify_leaf_scc(g, u_, scc);
            if (c.kind == LeafSccKind::MessageDisconnected) {
                WorkGraph child = g;
                child.add_arc(scc.front(), child.add_dummy());
                done = consider(child);
            } else if (c.kind == LeafSccKind::Degenerated) {
                for (const DegeneracyWitness& w : all_witness_choices(g, u_, scc)) {
                    WorkGraph child = g;
                    child.add_arc(w.v_inside, w.target);
                    if ((done = consider(child)))
                        break;
                }
            }
            if (done)
                break;
        }
        for (std::size_t i = 0; !done && i < sccs.size(); ++i) {
            const LeafSccKind kind = classify_leaf_scc(g, u_, sccs[i]).kind;
            if (kind != LeafSccKind::MessageConnected && kind != LeafSccKind::NonDegenerated)
                continue;
            for (int v : sccs[i]) {
                WorkGraph child = g;
                child.remove_out_arcs(v);
                if ((done = consider(child)))
                    break;
            }
        }
        if (!capped)
            memo_.emplace(std::move(key), result);
        return result;
    }

    std::uint64_t states() const { return memo_.size(); }
    bool partial() const { return partial_; }

private:
    const MessageGraph& u_;
    ExhaustiveCaps caps_;
    std::map<StateKey, int> memo_;
    bool partial_ = false;
};

} // namespace

std::string_view to_string(StepKind kind) {
    for (auto [k, name] : kStepNames)
        if (k == kind)
            return name;
    return "?";
}

std::optional<StepKind> step_kind_from_string(std::string_view s) {
    for (auto [k, name] : kStepNames)
        if (name == s)
            return k;
    return std::nullopt;
}

WorkGraph append_disconnected(const WorkGraph& g, const MessageGraph& u, const VertexSet& scc) {
    require_leaf_scc(g, scc);
    if (message_connected_within(u, scc) || !disconnected_pair(u, scc, g.vertex_count()))
        throw PreconditionError("leaf SCC is not message-disconnected");
    WorkGraph out = g;
    const int dummy = out.add_dummy();
    out.add_arc(scc.front(), dummy);
    return out;
}

WorkGraph append_degenerated(const WorkGraph& g, const MessageGraph& u, const VertexSet& scc,
                             const DegeneracyWitness& w) {
    require_leaf_scc(g, scc);
    if (!witness_is_valid(g, u, scc, w))
        throw PreconditionError("invalid degeneracy witness");
    WorkGraph out = g;
    out.add_arc(w.v_inside, w.target);
    return out;
}

WorkGraph prune_leaf_scc(const WorkGraph& g, const VertexSet& scc, std::optional<int> vertex) {
    require_leaf_scc(g, scc);
    require_unit_weights(g);
    const int v = vertex.value_or(scc.front());
    if (!set_contains(scc, v))
        throw PreconditionError("vertex " + std::to_string(v) + " is not in the leaf SCC");
    WorkGraph out = g;
    out.remove_out_arcs(v);
    return out;
}

LowerBoundReport run_algorithm2(const Instance& inst) {
    require_valid_binary(inst);
    Engine e{WorkGraph::from_instance(inst), derive_message_graph(inst), {}};
    LowerBoundReport report;
    report.v_out_original = non_leaf_count(e.g);

    for (const VertexSet& scc : leaf_sccs(e.g)) {
        if (message_connected_within(e.u, scc)) {
            e.prune(scc, scc.front(), StepKind::PruneConnected);
            ++report.connected_count;
        }
    }
    e.append_all();
    report.leaf_sccs_after_init = leaf_scc_count(e.g);

    for (auto sccs = leaf_sccs(e.g); !sccs.empty(); sccs = leaf_sccs(e.g)) {
        std::optional<VertexSet> connected;
        std::vector<VertexSet> non_degenerated;
        for (const VertexSet& scc : sccs) {
            const LeafSccKind kind = classify_leaf_scc(e.g, e.u, scc).kind;
            if (kind == LeafSccKind::MessageConnected && !connected)
                connected = scc;
            else if (kind == LeafSccKind::NonDegenerated)
                non_degenerated.push_back(scc);
        }
        if (connected) {
            e.prune(*connected, connected->front(), StepKind::PruneConnected);
        } else {
            if (non_degenerated.empty())
                throw Error("internal: leaf SCCs left after appending are neither connected nor non-degenerated");
            const VertexSet* pick = &non_degenerated.front();
            int best_gain = -1;
            for (const VertexSet& scc : non_degenerated) {
                const int gain = degeneration_gain(e.g, e.u, scc, non_degenerated);
                if (gain > best_gain) {
                    best_gain = gain;
                    pick = &scc;
                }
            }
            e.prune(*pick, pick->front(), StepKind::PruneNonDegenerated);
        }
        ++report.iterations;
        e.append_all();
    }

    report.bound = report.v_out_original - (report.connected_count + report.iterations);
    report.steps = std::move(e.steps);
    report.final_graph = std::move(e.g);
    return report;
}

ExhaustiveResult exhaustive_lower_bound(const Instance& inst, const ExhaustiveCaps& caps) {
    require_valid_binary(inst);
    const MessageGraph u = derive_message_graph(inst);
    SequenceSearch search(u, caps);
    ExhaustiveResult r;
    r.bound = search.best(WorkGraph::from_instance(inst));
    r.states = search.states();
    r.partial = search.partial();
    return r;
}

} // namespace uniprior
