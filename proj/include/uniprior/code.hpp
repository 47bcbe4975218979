#pragma once

#include "uniprior/gf2.hpp"
#include "uniprior/instance.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace uniprior {

// Selects the serial reference path or the OpenMP path of a kernel. Both
// return identical results.
enum class Execution { serial, parallel };

// One message bit, 1-based on both coordinates.
struct Term {
    int message = 0;
    int bit = 0;
    auto operator<=>(const Term&) const = default;
};

// One transmitted bit: the XOR of its terms, sent by `sender` (1-based).
struct Symbol {
    int sender = 0;
    std::vector<Term> terms;
    bool operator==(const Symbol&) const = default;
};

struct LinearIndexCode {
    std::vector<Symbol> symbols;
    std::size_t length() const noexcept { return symbols.size(); }
    bool operator==(const LinearIndexCode&) const = default;
};

LinearIndexCode parse_code(std::string_view text);
std::string serialize_code(const LinearIndexCode& code);

// Throws MalformedCode when a symbol is empty, repeats a term, names an
// unknown sender, or uses a bit its sender does not hold.
void check_well_formed(const Instance& inst, const LinearIndexCode& code);

// Coordinate map between (message, bit) and positions 0..total-1, ordered by
// message then bit.
class BitLayout {
public:
    explicit BitLayout(const Instance& inst);
    std::size_t total() const noexcept { return total_; }
    std::size_t index(int message, int bit) const { return offset_.at(message) + static_cast<std::size_t>(bit - 1); }
    std::size_t offset(int message) const { return offset_.at(message); }
    int bits(int message) const { return q_.at(message - 1); }
    Term term_at(std::size_t index) const;

private:
    std::vector<int> q_;
    std::vector<std::size_t> offset_;
    std::size_t total_ = 0;
};

BitRow symbol_row(const BitLayout& layout, const Symbol& s);

struct BitFailure {
    int receiver = 0;
    int message = 0;
    int bit = 0;
    auto operator<=>(const BitFailure&) const = default;
};

struct VerifyReport {
    bool valid = true;
    // Sorted by receiver, then message, then bit.
    std::vector<BitFailure> failures;
    bool operator==(const VerifyReport&) const = default;
};

// Rank criterion: receiver r decodes bit w iff e_w lies in the span of the
// symbol rows together with the unit rows of r's own bits.
VerifyReport verify_linear(const Instance& inst, const LinearIndexCode& code);

inline constexpr int kDefaultExhaustiveBitCap = 20;

// Enumerates all 2^B message assignments and checks that every wanted bit is
// a function of (codeword, own bits). Throws CapExceeded when B > cap.
VerifyReport verify_exhaustive(const Instance& inst, const LinearIndexCode& code,
                               int cap = kDefaultExhaustiveBitCap,
                               Execution exec = Execution::parallel);

struct OracleCaps {
    int max_len = -1;  // -1: up to the uncoded length
    int max_bits = 12;
};

struct OracleResult {
    int length = 0;
    LinearIndexCode code;
    // The search stopped at a cap; length is an upper bound only.
    bool partial = false;
    bool operator==(const OracleResult&) const = default;
};

// Minimum number of scalar XOR symbols, each supported inside one sender's
// bits, such that verify_linear accepts. This is the linear optimum, which
// for multi-sender instances is only an upper bound on the true optimum.
OracleResult oracle_min_linear(const Instance& inst, const OracleCaps& caps = {},
                               Execution exec = Execution::parallel);

} // namespace uniprior
