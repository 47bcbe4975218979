#pragma once

#include "uniprior/graph.hpp"
#include "uniprior/instance.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace uniprior {

enum class LeafSccKind { MessageConnected, MessageDisconnected, Degenerated, NonDegenerated };

std::string_view to_string(LeafSccKind kind);
std::optional<LeafSccKind> leaf_scc_kind_from_string(std::string_view s);

struct DegeneracyWitness {
    VertexSet s_inside;
    VertexSet s_outside;
    int v_inside = 0;
    int target = 0;
    bool operator==(const DegeneracyWitness&) const = default;
};

struct LeafSccClass {
    LeafSccKind kind = LeafSccKind::NonDegenerated;
    std::optional<std::pair<int, int>> disconnected_pair;
    std::optional<DegeneracyWitness> degeneracy;
    bool operator==(const LeafSccClass&) const = default;
};

// Throws PreconditionError unless scc is a leaf SCC of g.
void require_leaf_scc(const WorkGraph& g, const VertexSet& scc);

bool message_connected_within(const MessageGraph& u, const VertexSet& scc);
std::optional<std::pair<int, int>> disconnected_pair(const MessageGraph& u, const VertexSet& scc,
                                                     int vertex_count);

LeafSccClass classify_leaf_scc(const WorkGraph& g, const MessageGraph& u, const VertexSet& scc);

// Canonical witness: s_inside ranges over the components of u restricted to
// scc; s_outside is every leaf outside scc plus at most one non-leaf w, trying
// "no w" first and then w ascending.
std::optional<DegeneracyWitness> find_degeneracy_witness(const WorkGraph& g, const MessageGraph& u,
                                                         const VertexSet& scc);

// Checks the three witness conditions plus v_inside/target membership and
// the case rule for target.
bool witness_is_valid(const WorkGraph& g, const MessageGraph& u, const VertexSet& scc,
                      const DegeneracyWitness& w);

// Every distinct (v_inside, target) arc admitted by some witness for scc:
// one per non-leaf w that completes a witness, plus one leaf target when an
// all-leaf s_outside works. v_inside is the smallest vertex of its s_inside
// unless the target is ungrounded, in which case every s_inside vertex is
// listed. Used for branching in the exhaustive bound.
std::vector<DegeneracyWitness> all_witness_choices(const WorkGraph& g, const MessageGraph& u,
                                                   const VertexSet& scc);

} // namespace uniprior
