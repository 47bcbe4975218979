#include "uniprior/graph.hpp"

#include "uniprior/error.hpp"

#include <algorithm>
#include <numeric>

namespace uniprior {

WorkGraph::WorkGraph(std::vector<int> weights) : original_(static_cast<int>(weights.size())) {
    weight_.reserve(weights.size() + 1);
    for (int w : weights)
        weight_.push_back(w);
    out_.resize(weight_.size());
}

WorkGraph WorkGraph::from_instance(const Instance& inst) {
    WorkGraph g(inst.q);
    for (const Arc& a : inst.arcs)
        g.add_arc(a.from, a.to);
    return g;
}

bool WorkGraph::has_arc(int from, int to) const {
    return contains(from) && out_[from].contains(to);
}

std::size_t WorkGraph::arc_count() const {
    std::size_t total = 0;
    for (const auto& s : out_)
        total += s.size();
    return total;
}

std::vector<Arc> WorkGraph::arcs() const {
    std::vector<Arc> all;
    for (int v = 1; v <= vertex_count(); ++v)
        for (int w : out_[v])
            all.push_back({v, w});
    return all;
}

void WorkGraph::add_arc(int from, int to) {
    if (!contains(from) || !contains(to))
        throw PreconditionError("arc endpoint out of range: " + std::to_string(from) + "->" + std::to_string(to));
    if (from == to)
        throw PreconditionError("self-arc on vertex " + std::to_string(from));
    if (is_dummy(from))
        throw PreconditionError("dummy vertex " + std::to_string(from) + " cannot have out-arcs");
    out_[from].insert(to);
}

void WorkGraph::remove_arc(int from, int to) {
    if (contains(from))
        out_[from].erase(to);
}

std::vector<Arc> WorkGraph::remove_out_arcs(int v) {
    std::vector<Arc> removed;
    for (int w : out_.at(v))
        removed.push_back({v, w});
    out_[v].clear();
    return removed;
}

int WorkGraph::add_dummy() {
    weight_.push_back(0);
    out_.emplace_back();
    return vertex_count();
}

std::vector<VertexSet> SccPartition::leaf_components() const {
    std::vector<VertexSet> out;
    for (std::size_t c = 0; c < components.size(); ++c)
        if (leaf_flags[c])
            out.push_back(components[c]);
    return out;
}

int SccPartition::leaf_count() const {
    return static_cast<int>(std::count(leaf_flags.begin(), leaf_flags.end(), true));
}

SccPartition scc_partition(const WorkGraph& g) {
    // Iterative Tarjan.
    const int nv = g.vertex_count();
    std::vector<int> index(nv + 1, -1), low(nv + 1, 0), raw_comp(nv + 1, -1);
    std::vector<bool> on_stack(nv + 1, false);
    std::vector<int> stack;
    std::vector<VertexSet> raw;
    int counter = 0;

    struct Frame {
        int v;
        std::set<int>::const_iterator next;
    };
    for (int root = 1; root <= nv; ++root) {
        if (index[root] >= 0)
            continue;
        std::vector<Frame> call{{root, g.out(root).begin()}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next != g.out(f.v).end()) {
                int w = *f.next++;
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, g.out(w).begin()});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const int v = f.v;
            call.pop_back();
            if (!call.empty())
                low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                VertexSet comp;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    raw_comp[w] = static_cast<int>(raw.size());
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                raw.push_back(std::move(comp));
            }
        }
    }

    std::vector<int> order(raw.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return raw[a].front() < raw[b].front(); });

    SccPartition p;
    p.component_of.assign(nv + 1, -1);
    for (int c : order) {
        const int id = static_cast<int>(p.components.size());
        bool leaf = raw[c].size() >= 2;
        for (int v : raw[c]) {
            p.component_of[v] = id;
            for (int w : g.out(v))
                if (raw_comp[w] != c)
                    leaf = false;
        }
        p.components.push_back(raw[c]);
        p.leaf_flags.push_back(leaf);
    }
    return p;
}

std::vector<VertexSet> leaf_sccs(const WorkGraph& g) { return scc_partition(g).leaf_components(); }

int leaf_scc_count(const WorkGraph& g) { return scc_partition(g).leaf_count(); }

VertexSet leaf_vertices(const WorkGraph& g) {
    VertexSet out;
    for (int v = 1; v <= g.vertex_count(); ++v)
        if (g.is_leaf(v))
            out.push_back(v);
    return out;
}

namespace {

std::vector<std::vector<int>> reverse_adjacency(const WorkGraph& g) {
    std::vector<std::vector<int>> in(g.vertex_count() + 1);
    for (int v = 1; v <= g.vertex_count(); ++v)
        for (int w : g.out(v))
            in[w].push_back(v);
    return in;
}

// Vertices reaching any marked start vertex through at least one arc.
std::vector<bool> reach_back(const WorkGraph& g, const VertexSet& starts) {
    const auto in = reverse_adjacency(g);
    std::vector<bool> seen(g.vertex_count() + 1, false);
    std::vector<int> stack;
    for (int s : starts)
        for (int p : in.at(s))
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int p : in[v])
            if (!seen[p]) {
                seen[p] = true;
                stack.push_back(p);
            }
    }
    return seen;
}

VertexSet to_set(const std::vector<bool>& mask) {
    VertexSet out;
    for (std::size_t v = 1; v < mask.size(); ++v)
        if (mask[v])
            out.push_back(static_cast<int>(v));
    return out;
}

} // namespace

VertexSet predecessors(const WorkGraph& g, int v) {
    if (!g.contains(v))
        throw PreconditionError("vertex " + std::to_string(v) + " not in graph");
    return to_set(reach_back(g, {v}));
}

VertexSet predecessors_of_set(const WorkGraph& g, const VertexSet& targets) {
    return to_set(reach_back(g, targets));
}

bool is_grounded(const WorkGraph& g) {
    const VertexSet leaves = leaf_vertices(g);
    const auto reached = reach_back(g, leaves);
    for (int v = 1; v <= g.vertex_count(); ++v)
        if (!g.is_leaf(v) && !reached[v])
            return false;
    return true;
}

long long predecessor_weight_bound(const WorkGraph& g) {
    const auto reached = reach_back(g, leaf_vertices(g));
    long long total = 0;
    for (int v = 1; v <= g.vertex_count(); ++v)
        if (reached[v])
            total += g.weight(v);
    return total;
}

int non_leaf_count(const WorkGraph& g) {
    int count = 0;
    for (int v = 1; v <= g.original_count(); ++v)
        if (!g.is_leaf(v))
            ++count;
    return count;
}

bool set_contains(const VertexSet& s, int v) { return std::binary_search(s.begin(), s.end(), v); }

} // namespace uniprior
