#include "uniprior/cli.hpp"

#include "uniprior/error.hpp"
#include "uniprior/report_json.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace uniprior {

namespace {

struct Options {
    std::string format = "text";
    std::string instance_path;
    std::string code_path;
    std::string output_path;
    bool exhaustive = false;
    std::uint64_t max_states = ExhaustiveCaps{}.max_states;
    int max_len = -1;
    int max_bits = OracleCaps{}.max_bits;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string join(const VertexSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i)
        out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

std::string symbol_text(const Symbol& s) {
    std::string out;
    for (std::size_t i = 0; i < s.terms.size(); ++i) {
        if (i)
            out += " + ";
        out += "x" + std::to_string(s.terms[i].message) + "[" + std::to_string(s.terms[i].bit) + "]";
    }
    return out + "  (sender " + std::to_string(s.sender) + ")";
}

void print_code(std::ostream& out, const LinearIndexCode& code) {
    out << "code (" << code.length() << " symbols):\n";
    for (std::size_t k = 0; k < code.symbols.size(); ++k)
        out << "  " << k + 1 << ". " << symbol_text(code.symbols[k]) << "\n";
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

int cmd_validate(const Options& o, std::ostream& out) {
    const Instance inst = load_instance(o.instance_path);
    const ValidationReport r = validate(inst);
    if (o.format == "json") {
        print_json(out, r);
    } else {
        out << (r.ok ? "valid" : "invalid") << "\n";
        for (const auto& v : r.violations)
            out << "  violation: " << v << "\n";
        for (const auto& n : r.notes)
            out << "  note: " << n << "\n";
    }
    return r.ok ? kExitOk : kExitInvalid;
}

int cmd_solve(const Options& o, std::ostream& out) {
    const Instance inst = load_instance(o.instance_path);
    const SingleSolution s = solve_single(inst);
    if (o.format == "json") {
        print_json(out, s);
        return kExitOk;
    }
    if (inst.is_binary())
        out << "optimal length = n - leaves - leaf SCCs = " << s.total_weight << " - " << s.leaf_weight << " - "
            << s.leaf_scc_count << " = " << s.optimal_length << "\n";
    else
        out << "optimal length = total - leaf bits - leaf SCC minima = " << s.total_weight << " - " << s.leaf_weight
            << " - " << s.leaf_scc_savings << " = " << s.optimal_length << "\n";
    for (const PruneStep& step : s.trace.steps)
        out << "prune leaf SCC " << join(step.scc) << " at vertex " << step.selected << "\n";
    print_code(out, s.code);
    return kExitOk;
}

int cmd_bound(const Options& o, std::ostream& out) {
    const Instance inst = load_instance(o.instance_path);
    BoundCaps caps;
    caps.exhaustive = o.exhaustive;
    caps.exhaustive_caps.max_states = o.max_states;
    const BoundReport r = bound_multi(inst, caps);
    const bool partial = r.trees_heuristic || (r.exhaustive && r.exhaustive->partial);
    if (o.format == "json") {
        print_json(out, r);
        return partial ? kExitPartial : kExitOk;
    }
    const auto& lr = r.lower_report;
    out << "lower = V_out - (connected + I) = " << lr.v_out_original << " - (" << lr.connected_count << " + "
        << lr.iterations << ") = " << lr.bound << "\n";
    if (r.exhaustive)
        out << "exhaustive lower = " << r.exhaustive->bound << " (" << r.exhaustive->states << " states"
            << (r.exhaustive->partial ? ", partial: state cap reached" : "") << ")\n";
    out << "upper = V_out - (connected + trees) = " << lr.v_out_original << " - (" << lr.connected_count << " + "
        << r.trees.size() << ") = " << r.upper << (r.trees_heuristic ? " (greedy tree search)" : "") << "\n";
    out << "bounds: lower " << r.lower << ", upper " << r.upper << "\n";
    out << "tight = " << (r.tight ? "yes (" + std::string(to_string(*r.tight_reason)) + ")" : "no") << "\n";
    for (const ConnectingTree& t : r.trees)
        out << "connecting tree " << join(t.vertices) << "\n";
    print_code(out, r.code);
    return partial ? kExitPartial : kExitOk;
}

int cmd_encode(const Options& o, std::ostream& out) {
    const Instance inst = load_instance(o.instance_path);
    const LinearIndexCode code = inst.senders.size() == 1 ? solve_single(inst).code : bound_multi(inst).code;
    std::ofstream file(o.output_path);
    if (!file)
        throw Error("cannot write " + o.output_path);
    file << serialize_code(code) << "\n";
    if (o.format == "json")
        print_json(out, {{"length", code.length()}, {"output", o.output_path}});
    else
        out << "wrote " << code.length() << " symbols to " << o.output_path << "\n";
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const Instance inst = load_instance(o.instance_path);
    require_valid(inst);
    const LinearIndexCode code = parse_code(read_file(o.code_path));
    const VerifyReport r = verify_linear(inst, code);
    if (o.format == "json") {
        print_json(out, r);
    } else {
        out << (r.valid ? "valid" : "invalid") << " (" << code.length() << " symbols)\n";
        for (const BitFailure& f : r.failures)
            out << "  receiver " << f.receiver << " cannot decode x" << f.message << "[" << f.bit << "]\n";
    }
    return r.valid ? kExitOk : kExitVerifyFailed;
}

int cmd_oracle(const Options& o, std::ostream& out) {
    const Instance inst = load_instance(o.instance_path);
    const OracleResult r = oracle_min_linear(inst, {o.max_len, o.max_bits});
    if (o.format == "json") {
        print_json(out, r);
    } else {
        out << "linear optimum " << (r.partial ? "<= " : "= ") << r.length
            << (r.partial ? " (partial: search cap reached)" : "") << "\n";
        print_code(out, r.code);
    }
    return r.partial ? kExitPartial : kExitOk;
}

int cmd_trace(const Options& o, std::ostream& out) {
    const Instance inst = load_instance(o.instance_path);
    const LowerBoundReport r = run_algorithm2(inst);
    if (o.format == "json") {
        print_json(out, r);
        return kExitOk;
    }
    for (std::size_t k = 0; k < r.steps.size(); ++k) {
        const StepRecord& s = r.steps[k];
        out << k + 1 << ". " << to_string(s.kind) << " " << join(s.scc);
        if (s.selected)
            out << " at vertex " << *s.selected;
        if (s.added_arc)
            out << " add arc " << s.added_arc->from << "->" << s.added_arc->to;
        if (s.dummy)
            out << " (dummy " << *s.dummy << ")";
        if (s.witness)
            out << " witness inside " << join(s.witness->s_inside) << " outside " << join(s.witness->s_outside);
        out << "\n";
    }
    out << "lower = V_out - (connected + I) = " << r.v_out_original << " - (" << r.connected_count << " + "
        << r.iterations << ") = " << r.bound << "\n";
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Index-coding solver for single-uniprior instances", "uniprior"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();

    auto with_instance = [&](const char* name, const char* help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("instance", o.instance_path, "Instance file")->required();
        return sub;
    };
    CLI::App* validate_cmd = with_instance("validate", "Check an instance file");
    CLI::App* solve_cmd = with_instance("solve", "Optimal code for a single-sender instance");
    CLI::App* bound_cmd = with_instance("bound", "Lower and upper bounds for a multi-sender instance");
    bound_cmd->add_flag("--exhaustive", o.exhaustive, "Also search every prune/append sequence");
    bound_cmd->add_option("--max-states", o.max_states, "State cap for --exhaustive")->check(CLI::PositiveNumber);
    CLI::App* encode_cmd = with_instance("encode", "Write the constructed code to a file");
    encode_cmd->add_option("-o,--output", o.output_path, "Code file to write")->required();
    CLI::App* verify_cmd = with_instance("verify", "Check that a code file decodes for every receiver");
    verify_cmd->add_option("code", o.code_path, "Code file")->required();
    CLI::App* oracle_cmd = with_instance("oracle", "Search for the shortest scalar linear code");
    oracle_cmd->add_option("--max-len", o.max_len, "Longest code length to try")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--max-bits", o.max_bits, "Largest total bit count to search")
        ->check(CLI::PositiveNumber);
    CLI::App* trace_cmd = with_instance("trace", "Step log of the appending-pruning algorithm");
    for (CLI::App* sub : app.get_subcommands({}))
        sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (validate_cmd->parsed())
            return cmd_validate(o, out);
        if (solve_cmd->parsed())
            return cmd_solve(o, out);
        if (bound_cmd->parsed())
            return cmd_bound(o, out);
        if (encode_cmd->parsed())
            return cmd_encode(o, out);
        if (verify_cmd->parsed())
            return cmd_verify(o, out);
        if (oracle_cmd->parsed())
            return cmd_oracle(o, out);
        if (trace_cmd->parsed())
            return cmd_trace(o, out);
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitPartial;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}

} // namespace uniprior
