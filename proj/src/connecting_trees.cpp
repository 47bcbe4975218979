#include "uniprior/multi_sender.hpp"

#include "uniprior/error.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>

namespace uniprior {

namespace {

constexpr std::array<std::pair<TightReason, std::string_view>, 3> kReasonNames{{
    {TightReason::NoLeafSccAfterInit, "NoLeafSccAfterInit"},
    {TightReason::DisjointSenders, "DisjointSenders"},
    {TightReason::BoundsCoincide, "BoundsCoincide"},
}};

constexpr int kMaskEnumerationLimit = 24;

std::uint32_t bit_of(int v) { return std::uint32_t{1} << (v - 1); }

VertexSet mask_vertices(std::uint32_t mask) {
    VertexSet out;
    for (; mask; mask &= mask - 1)
        out.push_back(std::countr_zero(mask) + 1);
    return out;
}

struct MaskGraph {
    int n = 0;
    std::vector<std::uint32_t> out;  // out-neighbours of v
    std::vector<std::uint32_t> adj;  // message-graph neighbours of v
    std::uint32_t usable = 0;        // non-leaf, not forbidden

    MaskGraph(const WorkGraph& g, const MessageGraph& u, const VertexSet& forbidden)
        : n(g.original_count()), out(n + 1, 0), adj(n + 1, 0) {
        for (int v = 1; v <= n; ++v) {
            for (int w : g.out(v)) {
                if (w <= n)
                    out[v] |= bit_of(w);
                else
                    out[v] |= ~std::uint32_t{0};  // an arc to a dummy never closes
            }
            for (int w : u.neighbors(v))
                if (w <= n)
                    adj[v] |= bit_of(w);
            if (!g.is_leaf(v) && !set_contains(forbidden, v))
                usable |= bit_of(v);
        }
    }

    bool valid(std::uint32_t mask) const {
        if (mask == 0 || (mask & ~usable) || std::has_single_bit(mask))
            return false;
        for (std::uint32_t m = mask; m; m &= m - 1)
            if (out[std::countr_zero(m) + 1] & ~mask)
                return false;
        std::uint32_t reached = mask & (~mask + 1);
        for (std::uint32_t frontier = reached; frontier;) {
            std::uint32_t next = 0;
            for (std::uint32_t m = frontier; m; m &= m - 1)
                next |= adj[std::countr_zero(m) + 1];
            next &= mask & ~reached;
            reached |= next;
            frontier = next;
        }
        return reached == mask;
    }
};

std::vector<std::uint32_t> enumerate_serial(const MaskGraph& mg) {
    std::vector<std::uint32_t> sets;
    const std::uint32_t limit = std::uint32_t{1} << mg.n;
    for (std::uint32_t mask = 1; mask < limit; ++mask)
        if (mg.valid(mask))
            sets.push_back(mask);
    return sets;
}

std::vector<std::uint32_t> enumerate_parallel(const MaskGraph& mg) {
    const long long limit = 1LL << mg.n;
    std::vector<char> hit(static_cast<std::size_t>(limit), 0);
#pragma omp parallel for schedule(static)
    for (long long mask = 1; mask < limit; ++mask)
        hit[mask] = mg.valid(static_cast<std::uint32_t>(mask));
    std::vector<std::uint32_t> sets;
    for (long long mask = 1; mask < limit; ++mask)
        if (hit[mask])
            sets.push_back(static_cast<std::uint32_t>(mask));
    return sets;
}

// Edges of a breadth-first spanning tree of u restricted to vs, rooted at the
// smallest vertex with neighbours visited in ascending order.
std::vector<std::pair<int, int>> bfs_tree(const MessageGraph& u, const VertexSet& vs) {
    std::vector<std::pair<int, int>> edges;
    if (vs.empty())
        return edges;
    VertexSet seen{vs.front()};
    std::vector<int> queue{vs.front()};
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        for (int w : u.neighbors(v)) {
            if (!set_contains(vs, w) || set_contains(seen, w))
                continue;
            seen.insert(std::upper_bound(seen.begin(), seen.end(), w), w);
            queue.push_back(w);
            edges.emplace_back(std::min(v, w), std::max(v, w));
        }
    }
    return edges;
}

// Maximum number of pairwise disjoint sets; ties resolved towards taking the
// lowest-mask set that contains the lowest free vertex.
class Packer {
public:
    explicit Packer(std::vector<std::uint32_t> sets) : sets_(std::move(sets)) {}

    int best(std::uint32_t avail) {
        if (auto it = memo_.find(avail); it != memo_.end())
            return it->second;
        int result = 0;
        std::uint32_t reachable = 0;
        for (auto s : sets_)
            if ((s & ~avail) == 0)
                reachable |= s;
        if (reachable) {
            const std::uint32_t low = reachable & (~reachable + 1);
            for (auto s : sets_)
                if ((s & low) && (s & ~avail) == 0)
                    result = std::max(result, 1 + best(avail & ~s));
            result = std::max(result, best(avail & ~low));
        }
        memo_.emplace(avail, result);
        return result;
    }

    std::vector<std::uint32_t> choose(std::uint32_t avail) {
        std::vector<std::uint32_t> picked;
        for (int target = best(avail); target > 0;) {
            std::uint32_t reachable = 0;
            for (auto s : sets_)
                if ((s & ~avail) == 0)
                    reachable |= s;
            const std::uint32_t low = reachable & (~reachable + 1);
            bool took = false;
            for (auto s : sets_) {
                if ((s & low) && (s & ~avail) == 0 && 1 + best(avail & ~s) == target) {
                    picked.push_back(s);
                    avail &= ~s;
                    --target;
                    took = true;
                    break;
                }
            }
            if (!took)
                avail &= ~low;
        }
        return picked;
    }

private:
    std::vector<std::uint32_t> sets_;
    std::map<std::uint32_t, int> memo_;
};

std::vector<std::uint32_t> inclusion_minimal(const std::vector<std::uint32_t>& sets) {
    std::vector<std::uint32_t> out;
    for (auto s : sets) {
        bool minimal = true;
        for (auto t : sets)
            if (t != s && (t & ~s) == 0) {
                minimal = false;
                break;
            }
        if (minimal)
            out.push_back(s);
    }
    return out;
}

// Out-closure of v, or nullopt when it reaches a leaf, a dummy or a forbidden vertex.
std::optional<VertexSet> closure(const WorkGraph& g, const VertexSet& forbidden, int v) {
    VertexSet seen{v};
    std::vector<int> stack{v};
    while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        if (g.is_leaf(x) || g.is_dummy(x) || set_contains(forbidden, x))
            return std::nullopt;
        for (int w : g.out(x)) {
            if (!set_contains(seen, w)) {
                seen.insert(std::upper_bound(seen.begin(), seen.end(), w), w);
                stack.push_back(w);
            }
        }
    }
    return seen;
}

bool u_connected(const MessageGraph& u, const VertexSet& vs) {
    return bfs_tree(u, vs).size() + 1 == vs.size();
}

std::vector<ConnectingTree> greedy_trees(const WorkGraph& g, const MessageGraph& u, const VertexSet& forbidden) {
    std::vector<VertexSet> candidates;
    for (int v = 1; v <= g.original_count(); ++v) {
        auto cl = closure(g, forbidden, v);
        if (cl && cl->size() >= 2 && u_connected(u, *cl))
            candidates.push_back(std::move(*cl));
    }
    std::sort(candidates.begin(), candidates.end(), [](const VertexSet& a, const VertexSet& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<bool> used(g.original_count() + 1, false);
    std::vector<ConnectingTree> trees;
    for (const VertexSet& c : candidates) {
        if (std::any_of(c.begin(), c.end(), [&](int v) { return used[v]; }))
            continue;
        for (int v : c)
            used[v] = true;
        trees.push_back({c, bfs_tree(u, c)});
    }
    return trees;
}

Symbol pair_symbol(const Instance& inst, int i, int j) {
    const int sender = smallest_owner(inst, {i, j});
    if (sender == 0)
        throw Error("no sender holds both x" + std::to_string(i) + " and x" + std::to_string(j));
    return {sender, {{std::min(i, j), 1}, {std::max(i, j), 1}}};
}

} // namespace

std::string_view to_string(TightReason r) {
    for (auto [k, name] : kReasonNames)
        if (k == r)
            return name;
    return "?";
}

std::optional<TightReason> tight_reason_from_string(std::string_view s) {
    for (auto [k, name] : kReasonNames)
        if (name == s)
            return k;
    return std::nullopt;
}

VertexSet message_connected_vertices(const Instance& inst) {
    const WorkGraph g = WorkGraph::from_instance(inst);
    const MessageGraph u = derive_message_graph(inst);
    VertexSet out;
    for (const VertexSet& scc : leaf_sccs(g))
        if (message_connected_within(u, scc))
            out.insert(out.end(), scc.begin(), scc.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::uint32_t> closed_connected_sets(const WorkGraph& g, const MessageGraph& u,
                                                 const VertexSet& forbidden, Execution exec) {
    if (g.original_count() > kMaskEnumerationLimit)
        throw CapExceeded("closed-set enumeration supports at most " + std::to_string(kMaskEnumerationLimit) +
                          " vertices");
    const MaskGraph mg(g, u, forbidden);
    return exec == Execution::serial ? enumerate_serial(mg) : enumerate_parallel(mg);
}

bool tree_is_valid(const Instance& inst, const ConnectingTree& t) {
    const auto& vs = t.vertices;
    if (vs.size() < 2 || !std::is_sorted(vs.begin(), vs.end()) ||
        std::adjacent_find(vs.begin(), vs.end()) != vs.end() || vs.front() < 1 || vs.back() > inst.n)
        return false;
    const WorkGraph g = WorkGraph::from_instance(inst);
    const MessageGraph u = derive_message_graph(inst);
    const VertexSet forbidden = message_connected_vertices(inst);
    for (int v : vs) {
        if (g.is_leaf(v) || set_contains(forbidden, v))
            return false;
        for (int w : g.out(v))
            if (!set_contains(vs, w))
                return false;
    }
    if (t.edges.size() + 1 != vs.size())
        return false;
    // Union-find over the tree edges: n-1 edges with no cycle span the set.
    std::map<int, int> parent;
    for (int v : vs)
        parent[v] = v;
    auto find = [&](int v) {
        while (parent[v] != v)
            v = parent[v] = parent[parent[v]];
        return v;
    };
    for (auto [i, j] : t.edges) {
        if (!set_contains(vs, i) || !set_contains(vs, j) || !u.has_edge(i, j))
            return false;
        const int a = find(i), b = find(j);
        if (a == b)
            return false;
        parent[a] = b;
    }
    return true;
}

TreeSearchResult find_connecting_trees(const Instance& inst, const TreeCaps& caps) {
    require_valid_binary(inst);
    const WorkGraph g = WorkGraph::from_instance(inst);
    const MessageGraph u = derive_message_graph(inst);
    const VertexSet forbidden = message_connected_vertices(inst);

    TreeSearchResult result;
    if (inst.n > caps.exact_vertex_limit || inst.n > kMaskEnumerationLimit) {
        result.trees = greedy_trees(g, u, forbidden);
        result.heuristic = true;
        return result;
    }
    // Any packing stays a packing when each set shrinks to a minimal one.
    Packer packer(inclusion_minimal(closed_connected_sets(g, u, forbidden)));
    const std::uint32_t all = inst.n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << inst.n) - 1;
    for (std::uint32_t mask : packer.choose(all)) {
        VertexSet vs = mask_vertices(mask);
        auto edges = bfs_tree(u, vs);
        result.trees.push_back({std::move(vs), std::move(edges)});
    }
    std::sort(result.trees.begin(), result.trees.end(),
              [](const ConnectingTree& a, const ConnectingTree& b) { return a.vertices < b.vertices; });
    return result;
}

LinearIndexCode encode_multi(const Instance& inst, const std::vector<ConnectingTree>& trees) {
    require_valid_binary(inst);
    const WorkGraph g = WorkGraph::from_instance(inst);
    const MessageGraph u = derive_message_graph(inst);
    std::vector<bool> covered(inst.n + 1, false);
    LinearIndexCode code;

    for (const ConnectingTree& t : trees) {
        if (!tree_is_valid(inst, t))
            throw PreconditionError("invalid connecting tree");
        for (int v : t.vertices) {
            if (covered[v])
                throw PreconditionError("connecting trees overlap at vertex " + std::to_string(v));
            covered[v] = true;
        }
        for (auto [i, j] : t.edges)
            code.symbols.push_back(pair_symbol(inst, i, j));
    }
    for (const VertexSet& scc : leaf_sccs(g)) {
        if (!message_connected_within(u, scc))
            continue;
        for (int v : scc)
            covered[v] = true;
        for (auto [i, j] : bfs_tree(u, scc))
            code.symbols.push_back(pair_symbol(inst, i, j));
    }
    for (int v = 1; v <= inst.n; ++v) {
        if (covered[v] || g.is_leaf(v))
            continue;
        code.symbols.push_back({smallest_owner(inst, {v}), {{v, 1}}});
    }
    return code;
}

BoundReport bound_multi(const Instance& inst, const BoundCaps& caps) {
    BoundReport r;
    r.lower_report = run_algorithm2(inst);
    r.lower = r.lower_report.bound;
    if (caps.exhaustive) {
        r.exhaustive = exhaustive_lower_bound(inst, caps.exhaustive_caps);
        r.lower = std::max(r.lower, r.exhaustive->bound);
    }
    TreeSearchResult trees = find_connecting_trees(inst, caps.tree_caps);
    r.trees = std::move(trees.trees);
    r.trees_heuristic = trees.heuristic;
    r.code = encode_multi(inst, r.trees);
    r.upper = static_cast<int>(r.code.length());
    if (r.lower > r.upper)
        throw Error("internal: lower bound " + std::to_string(r.lower) + " exceeds code length " +
                    std::to_string(r.upper));
    r.tight = r.lower == r.upper;
    if (r.tight) {
        if (senders_pairwise_disjoint(inst))
            r.tight_reason = TightReason::DisjointSenders;
        else if (r.lower_report.leaf_sccs_after_init == 0)
            r.tight_reason = TightReason::NoLeafSccAfterInit;
        else
            r.tight_reason = TightReason::BoundsCoincide;
    }
    return r;
}

} // namespace uniprior
