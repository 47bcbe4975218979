#include "uniprior/code.hpp"

#include "uniprior/error.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <set>
#include <unordered_set>

namespace uniprior {

namespace {

// Leaf messages are wanted by nobody: substituting x_leaf = 0 into any code
// keeps it valid, so the search only spans the bits of non-leaf messages.
struct SearchSpace {
    int width = 0;
    std::vector<Term> coord_term;
    std::vector<std::uint32_t> sender_masks;
    std::vector<std::uint32_t> allowed;
    std::vector<std::uint32_t> own;
    std::vector<std::vector<std::uint32_t>> wanted_units;
    int trivial_lower = 0;
};

SearchSpace build_space(const Instance& inst) {
    std::vector<std::set<int>> wants(inst.n + 1);
    std::vector<bool> non_leaf(inst.n + 1, false);
    for (const Arc& a : inst.arcs) {
        wants[a.to].insert(a.from);
        non_leaf[a.from] = true;
    }

    SearchSpace sp;
    std::vector<int> first_coord(inst.n + 1, -1);
    for (int m = 1; m <= inst.n; ++m) {
        if (!non_leaf[m])
            continue;
        first_coord[m] = sp.width;
        for (int b = 1; b <= inst.q[m - 1]; ++b)
            sp.coord_term.push_back({m, b});
        sp.width += inst.q[m - 1];
    }
    auto bits_of = [&](int m) -> std::uint32_t {
        if (first_coord[m] < 0)
            return 0;
        return ((std::uint32_t{1} << inst.q[m - 1]) - 1) << first_coord[m];
    };

    std::set<std::uint32_t> allowed;
    for (const auto& set : normalized_senders(inst)) {
        std::uint32_t mask = 0;
        for (int m : set)
            mask |= bits_of(m);
        sp.sender_masks.push_back(mask);
        for (std::uint32_t sub = mask; sub; sub = (sub - 1) & mask)
            allowed.insert(sub);
    }
    sp.allowed.assign(allowed.begin(), allowed.end());

    sp.own.assign(inst.n + 1, 0);
    sp.wanted_units.resize(inst.n + 1);
    for (int r = 1; r <= inst.n; ++r) {
        sp.own[r] = bits_of(r);
        for (int j : wants[r]) {
            std::uint32_t bits = bits_of(j);
            for (; bits; bits &= bits - 1)
                sp.wanted_units[r].push_back(bits & (~bits + 1));
        }
        sp.trivial_lower = std::max(sp.trivial_lower, static_cast<int>(sp.wanted_units[r].size()));
    }
    return sp;
}

// Row space kept as one row per leading (highest) bit.
struct Span {
    std::array<std::uint32_t, 32> row{};
    int dim = 0;

    std::uint32_t reduce(std::uint32_t v) const {
        while (v) {
            const int h = 31 - std::countl_zero(v);
            if (!row[h])
                return v;
            v ^= row[h];
        }
        return 0;
    }
    bool insert(std::uint32_t v) {
        v = reduce(v);
        if (!v)
            return false;
        row[31 - std::countl_zero(v)] = v;
        ++dim;
        return true;
    }
    // Reduced echelon rows, highest pivot first: a canonical subspace key.
    std::vector<std::uint32_t> canonical() const {
        std::array<std::uint32_t, 32> r = row;
        for (int p = 0; p < 32; ++p) {
            if (!r[p])
                continue;
            for (int q = p + 1; q < 32; ++q)
                if (r[q] >> p & 1u)
                    r[q] ^= r[p];
        }
        std::vector<std::uint32_t> key;
        for (int p = 31; p >= 0; --p)
            if (r[p])
                key.push_back(r[p]);
        return key;
    }
};

struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& k) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto v : k)
            h = (h ^ v) * 1099511628211ull;
        return h;
    }
};

using Memo = std::unordered_set<std::vector<std::uint32_t>, KeyHash>;

// Largest number of wanted bits any receiver still misses: each extra symbol
// can raise a receiver's decodable dimension by at most one.
int max_deficiency(const SearchSpace& sp, const Span& s) {
    int worst = 0;
    for (std::size_t r = 1; r < sp.own.size(); ++r) {
        if (sp.wanted_units[r].empty())
            continue;
        Span with_own = s;
        for (std::uint32_t bits = sp.own[r]; bits; bits &= bits - 1)
            with_own.insert(bits & (~bits + 1));
        const int base = with_own.dim;
        for (auto u : sp.wanted_units[r])
            with_own.insert(u);
        worst = std::max(worst, with_own.dim - base);
    }
    return worst;
}

class Searcher {
public:
    explicit Searcher(const SearchSpace& sp) : sp_(sp) {}

    // Depth-first search for `remaining` further independent allowed rows
    // completing s into a decodable code; candidates in ascending order.
    bool extend(const Span& s, int remaining, std::vector<std::uint32_t>& path) {
        const int deficit = max_deficiency(sp_, s);
        if (deficit == 0)
            return true;
        if (deficit > remaining)
            return false;
        auto key = s.canonical();
        if (memo_.contains(key))
            return false;
        for (std::uint32_t v : sp_.allowed) {
            Span next = s;
            if (!next.insert(v))
                continue;
            path.push_back(v);
            if (extend(next, remaining - 1, path))
                return true;
            path.pop_back();
        }
        memo_.insert(std::move(key));
        return false;
    }

private:
    const SearchSpace& sp_;
    Memo memo_;
};

bool search_serial(const SearchSpace& sp, int length, std::vector<std::uint32_t>& path) {
    Searcher searcher(sp);
    path.clear();
    return searcher.extend(Span{}, length, path);
}

// One independent search per first row; the lowest successful first row wins,
// which is exactly the row the serial search would have committed to.
bool search_parallel(const SearchSpace& sp, int length, std::vector<std::uint32_t>& path) {
    path.clear();
    if (max_deficiency(sp, Span{}) == 0)
        return true;
    if (length == 0)
        return false;
    const int branches = static_cast<int>(sp.allowed.size());
    std::vector<std::vector<std::uint32_t>> found(branches);
    std::vector<char> ok(branches, 0);
    std::atomic<int> best{branches};
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < branches; ++i) {
        if (i > best.load())
            continue;
        Span s;
        s.insert(sp.allowed[i]);
        std::vector<std::uint32_t> local{sp.allowed[i]};
        Searcher searcher(sp);
        if (searcher.extend(s, length - 1, local)) {
            ok[i] = 1;
            found[i] = std::move(local);
            int cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
        }
    }
    for (int i = 0; i < branches; ++i) {
        if (ok[i]) {
            path = std::move(found[i]);
            return true;
        }
    }
    return false;
}

LinearIndexCode to_code(const SearchSpace& sp, const std::vector<std::uint32_t>& rows) {
    LinearIndexCode code;
    for (std::uint32_t v : rows) {
        Symbol sym;
        for (std::size_t s = 0; s < sp.sender_masks.size(); ++s) {
            if ((v & ~sp.sender_masks[s]) == 0) {
                sym.sender = static_cast<int>(s) + 1;
                break;
            }
        }
        for (std::uint32_t bits = v; bits; bits &= bits - 1)
            sym.terms.push_back(sp.coord_term[std::countr_zero(bits)]);
        code.symbols.push_back(std::move(sym));
    }
    return code;
}

std::vector<std::uint32_t> uncoded_rows(const SearchSpace& sp) {
    std::vector<std::uint32_t> rows;
    for (int c = 0; c < sp.width; ++c)
        rows.push_back(std::uint32_t{1} << c);
    return rows;
}

} // namespace

OracleResult oracle_min_linear(const Instance& inst, const OracleCaps& caps, Execution exec) {
    require_valid(inst);
    const SearchSpace sp = build_space(inst);
    OracleResult result;
    result.length = sp.width;

    if (inst.total_bits() > caps.max_bits || sp.width > 30) {
        result.partial = true;
        result.code = to_code(sp, uncoded_rows(sp));
        return result;
    }

    const int limit = caps.max_len < 0 ? sp.width - 1 : std::min(caps.max_len, sp.width - 1);
    std::vector<std::uint32_t> path;
    for (int length = sp.trivial_lower; length <= limit; ++length) {
        const bool hit = exec == Execution::serial ? search_serial(sp, length, path)
                                                   : search_parallel(sp, length, path);
        if (hit) {
            result.length = static_cast<int>(path.size());
            result.code = to_code(sp, path);
            return result;
        }
    }
    // The uncoded transmission of every non-leaf bit always decodes.
    result.partial = caps.max_len >= 0 && caps.max_len < sp.width - 1;
    result.code = to_code(sp, uncoded_rows(sp));
    return result;
}

} // namespace uniprior
