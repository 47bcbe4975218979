#pragma once

#include <compare>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace uniprior {

// Arc i -> j of the information-flow graph: receiver j wants message x_i.
struct Arc {
    int from = 0;
    int to = 0;
    auto operator<=>(const Arc&) const = default;
};

// A multi-sender single-uniprior instance. Receiver r knows x_r; vertices,
// messages and senders are 1-based in every external representation, and
// senders[s - 1] is the message set of sender s.
struct Instance {
    int n = 0;
    std::vector<int> q;
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> senders;

    bool operator==(const Instance&) const = default;

    int total_bits() const;
    bool is_binary() const;
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
    // Accepted irregularities such as duplicate arcs; never affect ok.
    std::vector<std::string> notes;

    bool operator==(const ValidationReport&) const = default;
};

// Syntax-only decode of the JSON instance format. Throws ParseError.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);
std::string serialize_instance(const Instance& inst);

ValidationReport validate(const Instance& inst);

// Throws PreconditionError carrying the first violation when inst is invalid.
void require_valid(const Instance& inst);
// Throws PreconditionError unless inst is valid and every q_i is 1.
void require_valid_binary(const Instance& inst);

// Sender sets with duplicate members removed and sorted; sender order kept.
std::vector<std::vector<int>> normalized_senders(const Instance& inst);
bool senders_pairwise_disjoint(const Instance& inst);
// Smallest 1-based sender id holding every message in msgs, or 0 if none.
int smallest_owner(const Instance& inst, const std::vector<int>& msgs);

// Undirected graph with edge {i, j} iff some sender holds both x_i and x_j.
// Vertices above n (dummies) are treated as isolated.
class MessageGraph {
public:
    MessageGraph() = default;
    MessageGraph(int n, const std::vector<std::pair<int, int>>& edges);

    int vertex_count() const noexcept { return n_; }
    bool has_edge(int i, int j) const;
    const std::vector<int>& neighbors(int v) const;
    // Sorted pairs {i, j} with i < j.
    const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }

    // Connected-component label per vertex 1..up_to (index 0 unused);
    // vertices above n each get their own label.
    std::vector<int> component_labels(int up_to) const;

    bool operator==(const MessageGraph& other) const { return n_ == other.n_ && edges_ == other.edges_; }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

MessageGraph derive_message_graph(const Instance& inst);

} // namespace uniprior
