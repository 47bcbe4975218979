#include "uniprior/report_json.hpp"

#include "uniprior/error.hpp"

namespace uniprior {

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null())
        return std::nullopt;
    return j.at(key).get<T>();
}

template <typename Enum>
Enum enum_from(const json& j, std::optional<Enum> (*parse)(std::string_view), const char* what) {
    auto v = parse(j.get<std::string>());
    if (!v)
        throw ParseError(std::string("unknown ") + what + " '" + j.get<std::string>() + "'");
    return *v;
}

} // namespace

void to_json(json& j, const Arc& a) { j = json::array({a.from, a.to}); }
void from_json(const json& j, Arc& a) { a = {j.at(0).get<int>(), j.at(1).get<int>()}; }

void to_json(json& j, const ValidationReport& r) {
    j = {{"ok", r.ok}, {"violations", r.violations}, {"notes", r.notes}};
}
void from_json(const json& j, ValidationReport& r) {
    j.at("ok").get_to(r.ok);
    j.at("violations").get_to(r.violations);
    j.at("notes").get_to(r.notes);
}

void to_json(json& j, const WorkGraph& g) {
    std::vector<int> weights;
    for (int v = 1; v <= g.original_count(); ++v)
        weights.push_back(g.weight(v));
    j = {{"weights", weights},
         {"dummies", g.vertex_count() - g.original_count()},
         {"arcs", g.arcs()}};
}
void from_json(const json& j, WorkGraph& g) {
    g = WorkGraph(j.at("weights").get<std::vector<int>>());
    for (int k = j.at("dummies").get<int>(); k > 0; --k)
        g.add_dummy();
    for (const Arc& a : j.at("arcs").get<std::vector<Arc>>())
        g.add_arc(a.from, a.to);
}

void to_json(json& j, const Term& t) { j = json::array({t.message, t.bit}); }
void from_json(const json& j, Term& t) { t = {j.at(0).get<int>(), j.at(1).get<int>()}; }

void to_json(json& j, const Symbol& s) { j = {{"sender", s.sender}, {"terms", s.terms}}; }
void from_json(const json& j, Symbol& s) {
    j.at("sender").get_to(s.sender);
    j.at("terms").get_to(s.terms);
}

void to_json(json& j, const LinearIndexCode& c) { j = c.symbols; }
void from_json(const json& j, LinearIndexCode& c) { j.get_to(c.symbols); }

void to_json(json& j, const BitFailure& f) {
    j = {{"receiver", f.receiver}, {"message", f.message}, {"bit", f.bit}};
}
void from_json(const json& j, BitFailure& f) {
    j.at("receiver").get_to(f.receiver);
    j.at("message").get_to(f.message);
    j.at("bit").get_to(f.bit);
}

void to_json(json& j, const VerifyReport& r) { j = {{"valid", r.valid}, {"failures", r.failures}}; }
void from_json(const json& j, VerifyReport& r) {
    j.at("valid").get_to(r.valid);
    j.at("failures").get_to(r.failures);
}

void to_json(json& j, const OracleResult& r) {
    j = {{"linear_optimum", r.length}, {"partial", r.partial}, {"code", r.code}};
}
void from_json(const json& j, OracleResult& r) {
    j.at("linear_optimum").get_to(r.length);
    j.at("partial").get_to(r.partial);
    j.at("code").get_to(r.code);
}

void to_json(json& j, const PruneStep& s) {
    j = {{"scc", s.scc}, {"selected", s.selected}, {"removed", s.removed}};
}
void from_json(const json& j, PruneStep& s) {
    j.at("scc").get_to(s.scc);
    j.at("selected").get_to(s.selected);
    j.at("removed").get_to(s.removed);
}

void to_json(json& j, const PruneTrace& t) { j = t.steps; }
void from_json(const json& j, PruneTrace& t) { j.get_to(t.steps); }

void to_json(json& j, const SingleSolution& s) {
    j = {{"optimal_length", s.optimal_length},
         {"lower_bound", s.lower_bound},
         {"total_weight", s.total_weight},
         {"leaf_weight", s.leaf_weight},
         {"leaf_scc_savings", s.leaf_scc_savings},
         {"leaf_scc_count", s.leaf_scc_count},
         {"code", s.code},
         {"trace", s.trace}};
}
void from_json(const json& j, SingleSolution& s) {
    j.at("optimal_length").get_to(s.optimal_length);
    j.at("lower_bound").get_to(s.lower_bound);
    j.at("total_weight").get_to(s.total_weight);
    j.at("leaf_weight").get_to(s.leaf_weight);
    j.at("leaf_scc_savings").get_to(s.leaf_scc_savings);
    j.at("leaf_scc_count").get_to(s.leaf_scc_count);
    j.at("code").get_to(s.code);
    j.at("trace").get_to(s.trace);
}

void to_json(json& j, const DegeneracyWitness& w) {
    j = {{"s_inside", w.s_inside}, {"s_outside", w.s_outside}, {"v_inside", w.v_inside}, {"target", w.target}};
}
void from_json(const json& j, DegeneracyWitness& w) {
    j.at("s_inside").get_to(w.s_inside);
    j.at("s_outside").get_to(w.s_outside);
    j.at("v_inside").get_to(w.v_inside);
    j.at("target").get_to(w.target);
}

void to_json(json& j, const StepRecord& s) {
    j = {{"kind", to_string(s.kind)},
         {"scc", s.scc},
         {"selected", optional_json(s.selected)},
         {"added_arc", optional_json(s.added_arc)},
         {"dummy", optional_json(s.dummy)},
         {"witness", optional_json(s.witness)}};
}
void from_json(const json& j, StepRecord& s) {
    s.kind = enum_from<StepKind>(j.at("kind"), step_kind_from_string, "step kind");
    j.at("scc").get_to(s.scc);
    s.selected = optional_from<int>(j, "selected");
    s.added_arc = optional_from<Arc>(j, "added_arc");
    s.dummy = optional_from<int>(j, "dummy");
    s.witness = optional_from<DegeneracyWitness>(j, "witness");
}

void to_json(json& j, const LowerBoundReport& r) {
    j = {{"bound", r.bound},
         {"v_out_original", r.v_out_original},
         {"connected_count", r.connected_count},
         {"iterations", r.iterations},
         {"leaf_sccs_after_init", r.leaf_sccs_after_init},
         {"steps", r.steps},
         {"final_graph", r.final_graph}};
}
void from_json(const json& j, LowerBoundReport& r) {
    j.at("bound").get_to(r.bound);
    j.at("v_out_original").get_to(r.v_out_original);
    j.at("connected_count").get_to(r.connected_count);
    j.at("iterations").get_to(r.iterations);
    j.at("leaf_sccs_after_init").get_to(r.leaf_sccs_after_init);
    j.at("steps").get_to(r.steps);
    j.at("final_graph").get_to(r.final_graph);
}

void to_json(json& j, const ExhaustiveResult& r) {
    j = {{"bound", r.bound}, {"states", r.states}, {"partial", r.partial}};
}
void from_json(const json& j, ExhaustiveResult& r) {
    j.at("bound").get_to(r.bound);
    j.at("states").get_to(r.states);
    j.at("partial").get_to(r.partial);
}

void to_json(json& j, const ConnectingTree& t) { j = {{"vertices", t.vertices}, {"edges", t.edges}}; }
void from_json(const json& j, ConnectingTree& t) {
    j.at("vertices").get_to(t.vertices);
    j.at("edges").get_to(t.edges);
}

void to_json(json& j, const BoundReport& r) {
    j = {{"lower", r.lower},
         {"upper", r.upper},
         {"tight", r.tight},
         {"tight_reason", r.tight_reason ? json(to_string(*r.tight_reason)) : json(nullptr)},
         {"lower_report", r.lower_report},
         {"exhaustive", optional_json(r.exhaustive)},
         {"trees", r.trees},
         {"trees_heuristic", r.trees_heuristic},
         {"code", r.code}};
}
void from_json(const json& j, BoundReport& r) {
    j.at("lower").get_to(r.lower);
    j.at("upper").get_to(r.upper);
    j.at("tight").get_to(r.tight);
    r.tight_reason = j.at("tight_reason").is_null()
                         ? std::nullopt
                         : std::optional(enum_from<TightReason>(j.at("tight_reason"), tight_reason_from_string,
                                                                 "tight reason"));
    j.at("lower_report").get_to(r.lower_report);
    r.exhaustive = optional_from<ExhaustiveResult>(j, "exhaustive");
    j.at("trees").get_to(r.trees);
    j.at("trees_heuristic").get_to(r.trees_heuristic);
    j.at("code").get_to(r.code);
}

} // namespace uniprior
