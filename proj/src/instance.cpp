#include "uniprior/instance.hpp"

#include "uniprior/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

namespace uniprior {

using nlohmann::json;

int Instance::total_bits() const { return std::accumulate(q.begin(), q.end(), 0); }

bool Instance::is_binary() const {
    return std::all_of(q.begin(), q.end(), [](int b) { return b == 1; });
}

namespace {

std::pair<int, int> line_and_column(std::string_view text, std::size_t byte) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer())
        throw ParseError(path + ": expected an integer");
    return v.get<int>();
}

std::vector<int> as_int_array(const json& v, const std::string& path) {
    if (!v.is_array())
        throw ParseError(path + ": expected an array");
    std::vector<int> out;
    out.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out.push_back(as_int(v[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

} // namespace

Instance parse_instance(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        auto [line, column] = line_and_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError(std::string("syntax error: ") + e.what(), line, column);
    }
    if (!doc.is_object())
        throw ParseError("instance: expected a JSON object");

    static const std::set<std::string> known{"n", "q", "arcs", "senders"};
    for (const auto& [key, value] : doc.items()) {
        if (!known.contains(key))
            throw ParseError("instance: unknown field '" + key + "'");
    }
    for (const auto& key : known) {
        if (!doc.contains(key))
            throw ParseError("instance: missing required field '" + key + "'");
    }

    Instance inst;
    inst.n = as_int(doc["n"], "n");
    inst.q = as_int_array(doc["q"], "q");

    const json& arcs = doc["arcs"];
    if (!arcs.is_array())
        throw ParseError("arcs: expected an array");
    for (std::size_t k = 0; k < arcs.size(); ++k) {
        const std::string path = "arcs[" + std::to_string(k) + "]";
        auto pair = as_int_array(arcs[k], path);
        if (pair.size() != 2)
            throw ParseError(path + ": expected a 2-element array");
        inst.arcs.push_back({pair[0], pair[1]});
    }

    const json& senders = doc["senders"];
    if (!senders.is_array())
        throw ParseError("senders: expected an array");
    for (std::size_t s = 0; s < senders.size(); ++s)
        inst.senders.push_back(as_int_array(senders[s], "senders[" + std::to_string(s) + "]"));
    return inst;
}

Instance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string serialize_instance(const Instance& inst) {
    json arcs = json::array();
    for (const Arc& a : inst.arcs)
        arcs.push_back({a.from, a.to});
    json doc = {{"n", inst.n}, {"q", inst.q}, {"arcs", arcs}, {"senders", inst.senders}};
    return doc.dump();
}

ValidationReport validate(const Instance& inst) {
    ValidationReport r;
    auto violation = [&](std::string msg) { r.violations.push_back(std::move(msg)); };
    const int n = inst.n;

    if (n < 1)
        violation("n: must be at least 1, got " + std::to_string(n));
    if (static_cast<int>(inst.q.size()) != n)
        violation("q: expected " + std::to_string(n) + " entries, got " + std::to_string(inst.q.size()));
    for (std::size_t i = 0; i < inst.q.size(); ++i) {
        if (inst.q[i] < 1)
            violation("q[" + std::to_string(i) + "]: message " + std::to_string(i + 1) +
                      " must have at least one bit");
    }

    auto in_range = [n](int v) { return v >= 1 && v <= n; };
    std::set<Arc> seen_arcs;
    for (std::size_t k = 0; k < inst.arcs.size(); ++k) {
        const Arc& a = inst.arcs[k];
        const std::string path = "arcs[" + std::to_string(k) + "]";
        const std::string shown = "[" + std::to_string(a.from) + "," + std::to_string(a.to) + "]";
        if (!in_range(a.from) || !in_range(a.to)) {
            violation(path + ": vertex out of range in " + shown);
            continue;
        }
        if (a.from == a.to) {
            violation(path + ": self-arc " + shown);
            continue;
        }
        if (!seen_arcs.insert(a).second)
            r.notes.push_back(path + ": duplicate arc " + shown + " ignored");
    }

    if (inst.senders.empty())
        violation("senders: at least one sender is required");
    std::vector<bool> owned(std::max(n, 0) + 1, false);
    std::set<std::vector<int>> seen_senders;
    for (std::size_t s = 0; s < inst.senders.size(); ++s) {
        const std::string path = "senders[" + std::to_string(s) + "]";
        const auto& set = inst.senders[s];
        if (set.empty()) {
            violation(path + ": sender holds no messages");
            continue;
        }
        std::set<int> members;
        for (int m : set) {
            if (!in_range(m)) {
                violation(path + ": message " + std::to_string(m) + " out of range");
                continue;
            }
            if (!members.insert(m).second)
                r.notes.push_back(path + ": duplicate member " + std::to_string(m) + " ignored");
            owned[m] = true;
        }
        std::vector<int> canon(members.begin(), members.end());
        if (!seen_senders.insert(canon).second)
            r.notes.push_back(path + ": duplicate sender");
    }
    for (int m = 1; m <= n; ++m) {
        if (!owned[m])
            violation("senders: message " + std::to_string(m) + " unowned");
    }

    r.ok = r.violations.empty();
    return r;
}

void require_valid(const Instance& inst) {
    const ValidationReport r = validate(inst);
    if (!r.ok)
        throw PreconditionError("invalid instance: " + r.violations.front());
}

void require_valid_binary(const Instance& inst) {
    require_valid(inst);
    if (!inst.is_binary())
        throw PreconditionError("non-binary instance: multi-sender operations require every q_i = 1");
}

std::vector<std::vector<int>> normalized_senders(const Instance& inst) {
    std::vector<std::vector<int>> out;
    out.reserve(inst.senders.size());
    for (const auto& set : inst.senders) {
        std::vector<int> s = set;
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        out.push_back(std::move(s));
    }
    return out;
}

bool senders_pairwise_disjoint(const Instance& inst) {
    std::vector<int> count(inst.n + 1, 0);
    for (const auto& s : normalized_senders(inst)) {
        for (int m : s) {
            if (m >= 1 && m <= inst.n && ++count[m] > 1)
                return false;
        }
    }
    return true;
}

int smallest_owner(const Instance& inst, const std::vector<int>& msgs) {
    const auto senders = normalized_senders(inst);
    for (std::size_t s = 0; s < senders.size(); ++s) {
        const auto& set = senders[s];
        const bool holds_all = std::all_of(msgs.begin(), msgs.end(), [&](int m) {
            return std::binary_search(set.begin(), set.end(), m);
        });
        if (holds_all)
            return static_cast<int>(s) + 1;
    }
    return 0;
}

MessageGraph::MessageGraph(int n, const std::vector<std::pair<int, int>>& edges) : n_(n), adj_(n + 1) {
    std::set<std::pair<int, int>> uniq;
    for (auto [i, j] : edges) {
        if (i == j || i < 1 || j < 1 || i > n || j > n)
            throw PreconditionError("message graph: invalid edge {" + std::to_string(i) + "," +
                                    std::to_string(j) + "}");
        uniq.insert({std::min(i, j), std::max(i, j)});
    }
    edges_.assign(uniq.begin(), uniq.end());
    for (auto [i, j] : edges_) {
        adj_[i].push_back(j);
        adj_[j].push_back(i);
    }
    for (auto& list : adj_)
        std::sort(list.begin(), list.end());
}

bool MessageGraph::has_edge(int i, int j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_)
        return false;
    return std::binary_search(adj_[i].begin(), adj_[i].end(), j);
}

const std::vector<int>& MessageGraph::neighbors(int v) const {
    static const std::vector<int> none;
    if (v < 1 || v > n_)
        return none;
    return adj_[v];
}

std::vector<int> MessageGraph::component_labels(int up_to) const {
    std::vector<int> label(up_to + 1, -1);
    int next = 0;
    for (int start = 1; start <= up_to; ++start) {
        if (label[start] >= 0)
            continue;
        label[start] = next;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : neighbors(v)) {
                if (w <= up_to && label[w] < 0) {
                    label[w] = next;
                    stack.push_back(w);
                }
            }
        }
        ++next;
    }
    return label;
}

MessageGraph derive_message_graph(const Instance& inst) {
    std::vector<std::pair<int, int>> edges;
    for (const auto& set : normalized_senders(inst)) {
        for (std::size_t a = 0; a < set.size(); ++a)
            for (std::size_t b = a + 1; b < set.size(); ++b)
                edges.emplace_back(set[a], set[b]);
    }
    return MessageGraph(inst.n, edges);
}

} // namespace uniprior
