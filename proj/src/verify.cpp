#include "uniprior/code.hpp"

#include "uniprior/error.hpp"
#include "uniprior/graph.hpp"

#include <omp.h>

#include <bit>
#include <map>
#include <set>
#include <unordered_map>

namespace uniprior {

namespace {

// Wanted messages per receiver, ascending, from the deduplicated arc set.
std::vector<std::vector<int>> wants_by_receiver(const Instance& inst) {
    std::vector<std::set<int>> sets(inst.n + 1);
    for (const Arc& a : inst.arcs)
        sets.at(a.to).insert(a.from);
    std::vector<std::vector<int>> out(inst.n + 1);
    for (int r = 1; r <= inst.n; ++r)
        out[r].assign(sets[r].begin(), sets[r].end());
    return out;
}

struct ExhaustiveSetup {
    int total_bits = 0;
    std::vector<std::uint32_t> symbol_masks;
    // Per receiver: own-bit offset/count and the wanted coordinates.
    std::vector<int> own_offset, own_bits;
    std::vector<std::vector<int>> wanted_coords;
};

ExhaustiveSetup prepare_exhaustive(const Instance& inst, const LinearIndexCode& code, int cap) {
    check_well_formed(inst, code);
    const BitLayout layout(inst);
    const int total = static_cast<int>(layout.total());
    if (total > cap)
        throw CapExceeded("exhaustive verification needs " + std::to_string(total) + " bits, cap is " +
                          std::to_string(cap));
    if (total > 30)
        throw CapExceeded("exhaustive verification supports at most 30 message bits");
    if (code.length() > 64)
        throw CapExceeded("exhaustive verification supports codes of at most 64 symbols");

    ExhaustiveSetup s;
    s.total_bits = total;
    for (const Symbol& sym : code.symbols) {
        std::uint32_t mask = 0;
        for (const Term& t : sym.terms)
            mask ^= std::uint32_t{1} << layout.index(t.message, t.bit);
        s.symbol_masks.push_back(mask);
    }
    const auto wants = wants_by_receiver(inst);
    s.own_offset.assign(inst.n + 1, 0);
    s.own_bits.assign(inst.n + 1, 0);
    s.wanted_coords.resize(inst.n + 1);
    for (int r = 1; r <= inst.n; ++r) {
        s.own_offset[r] = static_cast<int>(layout.offset(r));
        s.own_bits[r] = layout.bits(r);
        for (int j : wants[r])
            for (int b = 1; b <= layout.bits(j); ++b)
                s.wanted_coords[r].push_back(static_cast<int>(layout.index(j, b)));
    }
    return s;
}

std::uint64_t codeword_of(const std::vector<std::uint32_t>& masks, std::uint32_t x) {
    std::uint64_t word = 0;
    for (std::size_t k = 0; k < masks.size(); ++k)
        word |= static_cast<std::uint64_t>(std::popcount(x & masks[k]) & 1) << k;
    return word;
}

VerifyReport collect(const Instance& inst, const ExhaustiveSetup& s,
                     const std::vector<std::uint32_t>& failing_by_receiver) {
    const BitLayout layout(inst);
    VerifyReport report;
    for (int r = 1; r <= inst.n; ++r) {
        for (int c : s.wanted_coords[r]) {
            if (failing_by_receiver[r] >> c & 1u) {
                Term t = layout.term_at(static_cast<std::size_t>(c));
                report.failures.push_back({r, t.message, t.bit});
            }
        }
    }
    report.valid = report.failures.empty();
    return report;
}

// Reference: one ordered map per receiver from (codeword, own bits) to the
// first assignment seen in that class.
VerifyReport verify_exhaustive_serial(const Instance& inst, const ExhaustiveSetup& s) {
    const std::uint32_t count = std::uint32_t{1} << s.total_bits;
    std::vector<std::uint32_t> failing(inst.n + 1, 0);
    for (int r = 1; r <= inst.n; ++r) {
        std::uint32_t wanted_mask = 0;
        for (int c : s.wanted_coords[r])
            wanted_mask |= std::uint32_t{1} << c;
        if (!wanted_mask)
            continue;
        const std::uint32_t own_mask = ((std::uint32_t{1} << s.own_bits[r]) - 1) << s.own_offset[r];
        std::map<std::pair<std::uint64_t, std::uint32_t>, std::uint32_t> first;
        for (std::uint32_t x = 0; x < count; ++x) {
            auto key = std::make_pair(codeword_of(s.symbol_masks, x), x & own_mask);
            auto [it, inserted] = first.emplace(key, x);
            if (!inserted)
                failing[r] |= (it->second ^ x) & wanted_mask;
        }
    }
    return collect(inst, s, failing);
}

VerifyReport verify_exhaustive_parallel(const Instance& inst, const ExhaustiveSetup& s) {
    const std::uint32_t count = std::uint32_t{1} << s.total_bits;
    std::vector<std::uint64_t> words(count);
    const long long total = static_cast<long long>(count);
#pragma omp parallel for schedule(static)
    for (long long x = 0; x < total; ++x)
        words[x] = codeword_of(s.symbol_masks, static_cast<std::uint32_t>(x));

    // Codewords live in the span of the symbol masks; compress them to dense
    // class ids so each receiver can use a flat table.
    std::vector<std::uint32_t> word_id(count);
    {
        std::map<std::uint64_t, std::uint32_t> ids;
        for (std::uint32_t x = 0; x < count; ++x)
            word_id[x] = ids.emplace(words[x], static_cast<std::uint32_t>(ids.size())).first->second;
    }
    std::uint32_t distinct = 0;
    for (auto id : word_id)
        distinct = std::max(distinct, id + 1);

    std::vector<std::uint32_t> failing(inst.n + 1, 0);
    constexpr std::uint32_t kUnset = 0xffffffffu;
#pragma omp parallel for schedule(dynamic)
    for (int r = 1; r <= inst.n; ++r) {
        std::uint32_t wanted_mask = 0;
        for (int c : s.wanted_coords[r])
            wanted_mask |= std::uint32_t{1} << c;
        if (!wanted_mask)
            continue;
        const int own = s.own_bits[r];
        const std::uint32_t own_low = (std::uint32_t{1} << own) - 1;
        std::uint32_t bad = 0;
        const std::size_t table = static_cast<std::size_t>(distinct) << own;
        if (table <= (std::size_t{4} << s.total_bits)) {
            std::vector<std::uint32_t> rep(table, kUnset);
            for (std::uint32_t x = 0; x < count; ++x) {
                const std::size_t key =
                    (static_cast<std::size_t>(word_id[x]) << own) | ((x >> s.own_offset[r]) & own_low);
                if (rep[key] == kUnset)
                    rep[key] = x;
                else
                    bad |= (rep[key] ^ x) & wanted_mask;
            }
        } else {
            std::unordered_map<std::uint64_t, std::uint32_t> rep;
            for (std::uint32_t x = 0; x < count; ++x) {
                const std::uint64_t key =
                    (static_cast<std::uint64_t>(word_id[x]) << own) | ((x >> s.own_offset[r]) & own_low);
                auto [it, inserted] = rep.emplace(key, x);
                if (!inserted)
                    bad |= (it->second ^ x) & wanted_mask;
            }
        }
        failing[r] = bad;
    }
    return collect(inst, s, failing);
}

} // namespace

VerifyReport verify_linear(const Instance& inst, const LinearIndexCode& code) {
    check_well_formed(inst, code);
    const BitLayout layout(inst);
    std::vector<BitRow> rows;
    rows.reserve(code.length());
    for (const Symbol& s : code.symbols)
        rows.push_back(symbol_row(layout, s));

    Gf2Basis code_basis(layout.total());
    for (const auto& row : rows)
        code_basis.insert(row);

    const auto wants = wants_by_receiver(inst);
    VerifyReport report;
    for (int r = 1; r <= inst.n; ++r) {
        if (wants[r].empty())
            continue;
        Gf2Basis basis = code_basis;
        for (int b = 1; b <= layout.bits(r); ++b) {
            BitRow unit(layout.total());
            unit.set(layout.index(r, b));
            basis.insert(unit);
        }
        for (int j : wants[r]) {
            for (int b = 1; b <= layout.bits(j); ++b) {
                BitRow unit(layout.total());
                unit.set(layout.index(j, b));
                if (!basis.contains(unit))
                    report.failures.push_back({r, j, b});
            }
        }
    }
    report.valid = report.failures.empty();
    return report;
}

VerifyReport verify_exhaustive(const Instance& inst, const LinearIndexCode& code, int cap, Execution exec) {
    const ExhaustiveSetup setup = prepare_exhaustive(inst, code, cap);
    return exec == Execution::serial ? verify_exhaustive_serial(inst, setup)
                                     : verify_exhaustive_parallel(inst, setup);
}

} // namespace uniprior
