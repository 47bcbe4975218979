#pragma once

#include "uniprior/instance.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace uniprior {

// Sorted ascending list of 1-based vertex ids.
using VertexSet = std::vector<int>;

// Mutable information-flow graph. Original vertices are 1..original_count();
// dummies created by add_dummy() follow in creation order, carry weight 0 and
// never get out-arcs.
class WorkGraph {
public:
    WorkGraph() = default;
    explicit WorkGraph(std::vector<int> weights);

    // Deduplicates arcs; self-arcs and out-of-range endpoints are rejected.
    static WorkGraph from_instance(const Instance& inst);

    int vertex_count() const noexcept { return static_cast<int>(weight_.size()) - 1; }
    int original_count() const noexcept { return original_; }
    int weight(int v) const { return weight_.at(v); }
    bool is_dummy(int v) const { return v > original_; }
    bool contains(int v) const noexcept { return v >= 1 && v <= vertex_count(); }

    const std::set<int>& out(int v) const { return out_.at(v); }
    bool has_arc(int from, int to) const;
    bool is_leaf(int v) const { return out_.at(v).empty(); }
    std::size_t arc_count() const;
    std::vector<Arc> arcs() const;

    void add_arc(int from, int to);
    void remove_arc(int from, int to);
    // Removes and returns every out-arc of v, in ascending target order.
    std::vector<Arc> remove_out_arcs(int v);
    int add_dummy();

    bool operator==(const WorkGraph&) const = default;

private:
    std::vector<int> weight_{0};
    std::vector<std::set<int>> out_ = std::vector<std::set<int>>(1);
    int original_ = 0;
};

struct SccPartition {
    // Ordered by smallest contained vertex; each component sorted.
    std::vector<VertexSet> components;
    std::vector<bool> leaf_flags;
    // component_of[v] indexes components; entry 0 unused.
    std::vector<int> component_of;

    std::vector<VertexSet> leaf_components() const;
    int leaf_count() const;
};

SccPartition scc_partition(const WorkGraph& g);
std::vector<VertexSet> leaf_sccs(const WorkGraph& g);
int leaf_scc_count(const WorkGraph& g);

VertexSet leaf_vertices(const WorkGraph& g);
// Vertices with a nonempty directed path to v.
VertexSet predecessors(const WorkGraph& g, int v);
// Vertices with a nonempty directed path into some member of targets.
VertexSet predecessors_of_set(const WorkGraph& g, const VertexSet& targets);
// Every vertex is a leaf or reaches one. Computed without SCCs.
bool is_grounded(const WorkGraph& g);
// Sum of weights over predecessors of leaf vertices.
long long predecessor_weight_bound(const WorkGraph& g);
// Number of non-dummy vertices with at least one out-arc (V_out).
int non_leaf_count(const WorkGraph& g);

bool set_contains(const VertexSet& s, int v);

} // namespace uniprior
