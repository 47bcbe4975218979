// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include "support/data.hpp"
#include "support/generators.hpp"

#include "uniprior/classify.hpp"
#include "uniprior/cli.hpp"
#include "uniprior/code.hpp"
#include "uniprior/multi_sender.hpp"
#include "uniprior/single_sender.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

using namespace uniprior;
using namespace uniprior::testing;

namespace {

// Pinned sample sizes and seeds.
constexpr int kOracleInstances = 500;
constexpr int kDisjointInstances = 500;
constexpr int kStepApplications = 1000;
constexpr int kGroundedDigraphs = 1000;
constexpr int kSandwichInstances = 200;
constexpr int kVerifierPairs = 500;
constexpr int kMaxSandwichBits = 12;
constexpr int kMaxVerifierBits = 12;

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

LinearIndexCode read_code(const std::string& name) {
    std::ifstream in(data_path(name));
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_code(buf.str());
}

Symbol sym(std::vector<Term> terms) { return {1, std::move(terms)}; }

Outcome mixed_lengths_example() {
    const Instance inst = data_instance("mixed_lengths.json");
    const SingleSolution s = solve_single(inst);
    if (s.optimal_length != 6)
        return fail("length " + std::to_string(s.optimal_length));
    if (!verify_linear(inst, s.code).valid)
        return fail("code does not verify");
    // Cyclic code on {1,2,3} then the uncoded remainder, in the documented order.
    const std::vector<Symbol> expected{sym({{1, 1}, {2, 1}}), sym({{2, 1}, {3, 1}}), sym({{2, 2}}),
                                       sym({{3, 2}}),         sym({{4, 1}}),         sym({{4, 2}})};
    if (s.code.symbols != expected)
        return fail("code differs from the expected one");
    return {true, "length 6, code matches"};
}

Outcome binary_example() {
    const Instance inst = data_instance("binary_four.json");
    if (const long long len = solve_single(inst).optimal_length; len != 3)
        return fail("length " + std::to_string(len));
    std::ostringstream out, err;
    if (run_cli({"solve", data_path("binary_four.json")}, out, err) != kExitOk)
        return fail("cli failed: " + err.str());
    if (out.str().find("n - leaves - leaf SCCs = 4 - 0 - 1 = 3") == std::string::npos)
        return fail("arithmetic missing from trace");
    return {true, "length 3, 4 - 0 - 1 = 3"};
}

Outcome oracle_equivalence() {
    Rng rng(1003);
    for (int k = 0; k < kOracleInstances; ++k) {
        const Instance inst = random_instance(rng, uniform(rng, 1, 5), SenderShape::single);
        const long long solved = solve_single(inst).optimal_length;
        const OracleResult o = oracle_min_linear(inst);
        if (o.partial)
            return fail("oracle partial on instance " + std::to_string(k));
        if (o.length != solved)
            return fail("instance " + std::to_string(k) + ": solve " + std::to_string(solved) + " vs oracle " +
                        std::to_string(o.length) + "\n" + serialize_instance(inst));
    }
    return {true, std::to_string(kOracleInstances) + " instances, 0 mismatches"};
}

Outcome disjoint_pair_example() {
    const Instance inst = data_instance("disjoint_pair.json");
    const BoundReport b = bound_multi(inst);
    if (b.lower != 4 || b.upper != 4 || !b.tight || b.tight_reason != TightReason::DisjointSenders)
        return fail("lower " + std::to_string(b.lower) + " upper " + std::to_string(b.upper));
    const LinearIndexCode split = read_code("disjoint_pair_split.json");
    const std::vector<Symbol> expected{{1, {{1, 1}, {2, 1}}}, {2, {{3, 1}, {4, 1}}}};
    if (split.symbols != expected)
        return fail("split code file is not x1+x2, x3+x4");
    if (verify_linear(inst, split).valid)
        return fail("split code accepted");
    return {true, "4/4 DisjointSenders, split code rejected"};
}

Outcome four_sender_gap() {
    const Instance inst = data_instance("four_senders.json");
    const int lower = run_algorithm2(inst).bound;
    const BoundReport b = bound_multi(inst);
    const LinearIndexCode code = encode_multi(inst, b.trees);
    const LinearIndexCode xor3 = read_code("four_senders_triple_xor.json");
    if (lower != 4)
        return fail("lower " + std::to_string(lower));
    if (code.length() != 5 || b.upper != 5)
        return fail("upper " + std::to_string(code.length()));
    if (!verify_linear(inst, code).valid)
        return fail("pairwise code invalid");
    if (xor3.length() != 4 || !verify_linear(inst, xor3).valid || !verify_exhaustive(inst, xor3).valid)
        return fail("triple-XOR code rejected");
    return {true, "lower 4, upper 5, 4-symbol triple-XOR code valid"};
}

Outcome disjoint_senders() {
    Rng rng(1006);
    for (int k = 0; k < kDisjointInstances; ++k) {
        const Instance inst = k % 2 ? random_instance(rng, uniform(rng, 1, 8), SenderShape::disjoint)
                                    : random_cycle_instance(rng, uniform(rng, 2, 8), SenderShape::disjoint);
        const BoundReport b = bound_multi(inst);
        const int expected = b.lower_report.v_out_original - b.lower_report.connected_count;
        if (b.lower != expected || b.upper != expected)
            return fail("instance " + std::to_string(k) + ": lower " + std::to_string(b.lower) + " upper " +
                        std::to_string(b.upper) + " expected " + std::to_string(expected));
    }
    return {true, std::to_string(kDisjointInstances) + " instances, lower = upper = V_out - connected"};
}

Outcome step_invariants() {
    Rng rng(1007);
    int applied = 0, runs = 0;
    while (applied < kStepApplications) {
        const Instance inst = random_cycle_instance(rng, uniform(rng, 2, 8), SenderShape::overlapping);
        const MessageGraph u = derive_message_graph(inst);
        WorkGraph g = WorkGraph::from_instance(inst);
        // Random step sequence down to a grounded graph.
        for (auto sccs = leaf_sccs(g); !sccs.empty(); sccs = leaf_sccs(g)) {
            const VertexSet& scc = sccs[uniform(rng, 0, static_cast<int>(sccs.size()) - 1)];
            const LeafSccClass c = classify_leaf_scc(g, u, scc);
            const int n0 = leaf_scc_count(g), v0 = non_leaf_count(g);
            WorkGraph next;
            int lo = -1, hi = -1, dv = 0;
            switch (c.kind) {
            case LeafSccKind::MessageDisconnected:
                next = append_disconnected(g, u, scc);
                break;
            case LeafSccKind::Degenerated: {
                const auto choices = all_witness_choices(g, u, scc);
                next = append_degenerated(g, u, scc, choices[uniform(rng, 0, static_cast<int>(choices.size()) - 1)]);
                hi = 0;
                break;
            }
            default:
                next = prune_leaf_scc(g, scc, scc[uniform(rng, 0, static_cast<int>(scc.size()) - 1)]);
                dv = -1;
            }
            const int dn = leaf_scc_count(next) - n0, actual_dv = non_leaf_count(next) - v0;
            if (dn < lo || dn > hi || actual_dv != dv)
                return fail(std::string(to_string(c.kind)) + " step gave dN " + std::to_string(dn) + ", dV_out " +
                            std::to_string(actual_dv));
            g = std::move(next);
            ++applied;
        }
        const LowerBoundReport r = run_algorithm2(inst);
        const int steps = static_cast<int>(r.steps.size());
        if (steps > 0 && 2 * steps > 3 * inst.n - 4)
            return fail("algorithm took " + std::to_string(steps) + " steps on n = " + std::to_string(inst.n));
        if (!is_grounded(r.final_graph))
            return fail("algorithm left an ungrounded graph");
        ++runs;
    }
    return {true, std::to_string(applied) + " steps checked, " + std::to_string(runs) + " runs within 3n/2 - 2"};
}

Outcome grounded_iff_no_leaf_scc() {
    Rng rng(1008);
    for (int k = 0; k < kGroundedDigraphs; ++k) {
        const double p = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
        const WorkGraph g = random_digraph(rng, uniform(rng, 1, 10), p);
        if (is_grounded(g) != (leaf_scc_count(g) == 0))
            return fail("digraph " + std::to_string(k) + " disagrees");
    }
    return {true, std::to_string(kGroundedDigraphs) + " digraphs, 0 discrepancies"};
}

Outcome sandwich() {
    Rng rng(1009);
    int exact_exhaustive = 0;
    for (int k = 0; k < kSandwichInstances; ++k) {
        const int n = uniform(rng, 2, 9);
        static_assert(9 <= kMaxSandwichBits);
        const Instance inst = k % 2 ? random_instance(rng, n, SenderShape::overlapping)
                                    : random_cycle_instance(rng, n, SenderShape::overlapping);
        const int alg2 = run_algorithm2(inst).bound;
        const ExhaustiveResult ex = exhaustive_lower_bound(inst);
        const OracleResult oracle = oracle_min_linear(inst, {-1, kMaxSandwichBits});
        const BoundReport b = bound_multi(inst);
        const int upper = static_cast<int>(encode_multi(inst, b.trees).length());
        exact_exhaustive += !ex.partial;
        if (oracle.partial)
            return fail("oracle partial on instance " + std::to_string(k));
        if (!(alg2 <= ex.bound && ex.bound <= oracle.length && oracle.length <= upper))
            return fail("instance " + std::to_string(k) + ": " + std::to_string(alg2) + " / " +
                        std::to_string(ex.bound) + " / " + std::to_string(oracle.length) + " / " +
                        std::to_string(upper) + "\n" + serialize_instance(inst));
    }
    return {true, std::to_string(kSandwichInstances) + " instances, 0 violations (" +
                      std::to_string(exact_exhaustive) + " with a complete exhaustive search)"};
}

LinearIndexCode random_code(Rng& rng, const Instance& inst) {
    const auto senders = normalized_senders(inst);
    LinearIndexCode code;
    const int length = uniform(rng, 0, inst.total_bits());
    for (int k = 0; k < length; ++k) {
        const int s = uniform(rng, 0, static_cast<int>(senders.size()) - 1);
        Symbol sym{s + 1, {}};
        while (sym.terms.empty())
            for (int m : senders[s])
                for (int b = 1; b <= inst.q[m - 1]; ++b)
                    if (coin(rng, 0.4))
                        sym.terms.push_back({m, b});
        code.symbols.push_back(std::move(sym));
    }
    return code;
}

Outcome verifier_cross_check() {
    Rng rng(1010);
    int pairs = 0, valid = 0;
    while (pairs < kVerifierPairs) {
        const Instance inst = random_instance(rng, uniform(rng, 1, 6), SenderShape::overlapping, 3);
        if (inst.total_bits() > kMaxVerifierBits)
            continue;
        const LinearIndexCode code = random_code(rng, inst);
        const VerifyReport linear = verify_linear(inst, code);
        if (linear != verify_exhaustive(inst, code, kMaxVerifierBits))
            return fail("pair " + std::to_string(pairs) + " disagrees");
        valid += linear.valid;
        ++pairs;
    }
    return {true, std::to_string(pairs) + " pairs agree (" + std::to_string(valid) + " valid codes)"};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"single-sender worked example", mixed_lengths_example},
        {"binary single-sender example", binary_example},
        {"single-sender optimum equals linear oracle", oracle_equivalence},
        {"disjoint-sender example and split code", disjoint_pair_example},
        {"four-sender gap example", four_sender_gap},
        {"disjoint senders are tight", disjoint_senders},
        {"step postconditions and step count", step_invariants},
        {"grounded iff no leaf SCC", grounded_iff_no_leaf_scc},
        {"bound sandwich", sandwich},
        {"rank verifier equals exhaustive verifier", verifier_cross_check},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !o.pass;
        std::printf("%s %2zu %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
