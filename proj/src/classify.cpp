#include "uniprior/classify.hpp"

#include "uniprior/error.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace uniprior {

namespace {

constexpr std::array<std::pair<LeafSccKind, std::string_view>, 4> kKindNames{{
    {LeafSccKind::MessageConnected, "MessageConnected"},
    {LeafSccKind::MessageDisconnected, "MessageDisconnected"},
    {LeafSccKind::Degenerated, "Degenerated"},
    {LeafSccKind::NonDegenerated, "NonDegenerated"},
}};

// Components of u restricted to the vertices of s, ordered by smallest member.
std::vector<VertexSet> components_within(const MessageGraph& u, const VertexSet& s) {
    std::vector<VertexSet> out;
    std::set<int> unseen(s.begin(), s.end());
    while (!unseen.empty()) {
        VertexSet comp;
        std::vector<int> stack{*unseen.begin()};
        unseen.erase(unseen.begin());
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (int w : u.neighbors(v)) {
                if (unseen.erase(w))
                    stack.push_back(w);
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

// Message-graph neighbours of s that lie outside s.
VertexSet neighbours_of(const MessageGraph& u, const VertexSet& s) {
    std::set<int> out;
    for (int v : s)
        for (int w : u.neighbors(v))
            if (!set_contains(s, w))
                out.insert(w);
    return {out.begin(), out.end()};
}

bool covered(const WorkGraph& g, const MessageGraph& u, const VertexSet& s_inside, const VertexSet& s_outside) {
    if (s_outside.empty())
        return false;
    const VertexSet preds = predecessors_of_set(g, s_outside);
    for (int w : neighbours_of(u, s_inside))
        if (!set_contains(s_outside, w) && !set_contains(preds, w))
            return false;
    return true;
}

VertexSet leaves_outside(const WorkGraph& g, const VertexSet& scc) {
    VertexSet out;
    for (int v : leaf_vertices(g))
        if (!set_contains(scc, v))
            out.push_back(v);
    return out;
}

VertexSet non_leaves_outside(const WorkGraph& g, const VertexSet& scc) {
    VertexSet out;
    for (int v = 1; v <= g.vertex_count(); ++v)
        if (!g.is_leaf(v) && !set_contains(scc, v))
            out.push_back(v);
    return out;
}

VertexSet with_vertex(VertexSet s, int v) {
    s.insert(std::upper_bound(s.begin(), s.end(), v), v);
    return s;
}

} // namespace

std::string_view to_string(LeafSccKind kind) {
    for (auto [k, name] : kKindNames)
        if (k == kind)
            return name;
    return "?";
}

std::optional<LeafSccKind> leaf_scc_kind_from_string(std::string_view s) {
    for (auto [k, name] : kKindNames)
        if (name == s)
            return k;
    return std::nullopt;
}

void require_leaf_scc(const WorkGraph& g, const VertexSet& scc) {
    const auto leaves = leaf_sccs(g);
    if (std::find(leaves.begin(), leaves.end(), scc) == leaves.end())
        throw PreconditionError("vertex set is not a leaf SCC of the graph");
}

bool message_connected_within(const MessageGraph& u, const VertexSet& scc) {
    return components_within(u, scc).size() <= 1;
}

std::optional<std::pair<int, int>> disconnected_pair(const MessageGraph& u, const VertexSet& scc, int vertex_count) {
    const auto label = u.component_labels(vertex_count);
    for (std::size_t a = 0; a < scc.size(); ++a)
        for (std::size_t b = a + 1; b < scc.size(); ++b)
            if (label.at(scc[a]) != label.at(scc[b]))
                return std::make_pair(scc[a], scc[b]);
    return std::nullopt;
}

LeafSccClass classify_leaf_scc(const WorkGraph& g, const MessageGraph& u, const VertexSet& scc) {
    require_leaf_scc(g, scc);
    LeafSccClass c;
    if (message_connected_within(u, scc)) {
        c.kind = LeafSccKind::MessageConnected;
    } else if (auto pair = disconnected_pair(u, scc, g.vertex_count())) {
        c.kind = LeafSccKind::MessageDisconnected;
        c.disconnected_pair = pair;
    } else if (auto w = find_degeneracy_witness(g, u, scc)) {
        c.kind = LeafSccKind::Degenerated;
        c.degeneracy = std::move(w);
    } else {
        c.kind = LeafSccKind::NonDegenerated;
    }
    return c;
}

std::optional<DegeneracyWitness> find_degeneracy_witness(const WorkGraph& g, const MessageGraph& u,
                                                         const VertexSet& scc) {
    const VertexSet leaves = leaves_outside(g, scc);
    const VertexSet others = non_leaves_outside(g, scc);
    for (const VertexSet& inside : components_within(u, scc)) {
        if (covered(g, u, inside, leaves))
            return DegeneracyWitness{inside, leaves, inside.front(), leaves.front()};
        for (int w : others) {
            VertexSet outside = with_vertex(leaves, w);
            if (covered(g, u, inside, outside))
                return DegeneracyWitness{inside, std::move(outside), inside.front(), w};
        }
    }
    return std::nullopt;
}

bool witness_is_valid(const WorkGraph& g, const MessageGraph& u, const VertexSet& scc, const DegeneracyWitness& w) {
    const auto& in = w.s_inside;
    const auto& out = w.s_outside;
    if (in.empty() || in.size() >= scc.size() || !std::is_sorted(in.begin(), in.end()) ||
        !std::is_sorted(out.begin(), out.end()))
        return false;
    for (int v : in)
        if (!set_contains(scc, v))
            return false;
    VertexSet non_leaves;
    for (int v : out) {
        if (!g.contains(v) || set_contains(scc, v))
            return false;
        if (!g.is_leaf(v))
            non_leaves.push_back(v);
    }
    if (non_leaves.size() > 1)
        return false;
    // No message-graph edge from s_inside to the rest of the SCC.
    for (int v : neighbours_of(u, in))
        if (set_contains(scc, v))
            return false;
    if (!covered(g, u, in, out))
        return false;
    if (!set_contains(in, w.v_inside) || !set_contains(out, w.target))
        return false;
    return non_leaves.empty() || w.target == non_leaves.front();
}

std::vector<DegeneracyWitness> all_witness_choices(const WorkGraph& g, const MessageGraph& u, const VertexSet& scc) {
    const VertexSet leaves = leaves_outside(g, scc);
    const VertexSet others = non_leaves_outside(g, scc);
    const VertexSet grounded_preds = predecessors_of_set(g, leaf_vertices(g));
    std::vector<DegeneracyWitness> out;
    std::set<std::pair<int, int>> seen;
    auto add = [&](const VertexSet& inside, const VertexSet& outside, int target) {
        // A grounded target keeps the SCC grounded whichever vertex the arc
        // leaves from; otherwise the source vertex shapes later SCCs.
        const bool grounded = g.is_leaf(target) || set_contains(grounded_preds, target);
        const VertexSet sources = grounded ? VertexSet{inside.front()} : inside;
        for (int v : sources)
            if (seen.insert({v, target}).second)
                out.push_back({inside, outside, v, target});
    };
    for (const VertexSet& inside : components_within(u, scc)) {
        if (covered(g, u, inside, leaves))
            add(inside, leaves, leaves.front());
        for (int w : others) {
            VertexSet outside = with_vertex(leaves, w);
            if (covered(g, u, inside, outside))
                add(inside, outside, w);
        }
    }
    return out;
}

} // namespace uniprior
