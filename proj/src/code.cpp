#include "uniprior/code.hpp"

#include "uniprior/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

namespace uniprior {

using nlohmann::json;

LinearIndexCode parse_code(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("code: syntax error: ") + e.what());
    }
    if (!doc.is_array())
        throw ParseError("code: expected a JSON array of symbols");

    LinearIndexCode code;
    for (std::size_t k = 0; k < doc.size(); ++k) {
        const std::string path = "symbols[" + std::to_string(k) + "]";
        const json& s = doc[k];
        if (!s.is_object())
            throw ParseError(path + ": expected an object");
        for (const auto& [key, value] : s.items())
            if (key != "sender" && key != "terms")
                throw ParseError(path + ": unknown field '" + key + "'");
        if (!s.contains("sender") || !s["sender"].is_number_integer())
            throw ParseError(path + ".sender: expected an integer");
        if (!s.contains("terms") || !s["terms"].is_array())
            throw ParseError(path + ".terms: expected an array");
        Symbol sym;
        sym.sender = s["sender"].get<int>();
        for (const json& t : s["terms"]) {
            if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer() || !t[1].is_number_integer())
                throw ParseError(path + ".terms: each term must be [message, bit]");
            sym.terms.push_back({t[0].get<int>(), t[1].get<int>()});
        }
        code.symbols.push_back(std::move(sym));
    }
    return code;
}

std::string serialize_code(const LinearIndexCode& code) {
    json doc = json::array();
    for (const Symbol& s : code.symbols) {
        json terms = json::array();
        for (const Term& t : s.terms)
            terms.push_back({t.message, t.bit});
        doc.push_back({{"sender", s.sender}, {"terms", terms}});
    }
    return doc.dump();
}

void check_well_formed(const Instance& inst, const LinearIndexCode& code) {
    const auto senders = normalized_senders(inst);
    for (std::size_t k = 0; k < code.symbols.size(); ++k) {
        const Symbol& s = code.symbols[k];
        const std::string where = "symbol " + std::to_string(k + 1);
        if (s.sender < 1 || s.sender > static_cast<int>(senders.size()))
            throw MalformedCode(where + ": unknown sender " + std::to_string(s.sender));
        if (s.terms.empty())
            throw MalformedCode(where + ": no terms");
        const auto& owned = senders[s.sender - 1];
        std::set<Term> seen;
        for (const Term& t : s.terms) {
            const std::string term = "x" + std::to_string(t.message) + "[" + std::to_string(t.bit) + "]";
            if (t.message < 1 || t.message > inst.n)
                throw MalformedCode(where + ": message out of range in " + term);
            if (t.bit < 1 || t.bit > inst.q[t.message - 1])
                throw MalformedCode(where + ": bit out of range in " + term);
            if (!std::binary_search(owned.begin(), owned.end(), t.message))
                throw MalformedCode(where + ": sender " + std::to_string(s.sender) + " does not hold " + term);
            if (!seen.insert(t).second)
                throw MalformedCode(where + ": repeated term " + term);
        }
    }
}

BitLayout::BitLayout(const Instance& inst) : q_(inst.q), offset_(inst.n + 1, 0) {
    for (int i = 1; i <= inst.n; ++i) {
        offset_[i] = total_;
        total_ += static_cast<std::size_t>(q_[i - 1]);
    }
}

Term BitLayout::term_at(std::size_t index) const {
    for (int m = static_cast<int>(q_.size()); m >= 1; --m)
        if (offset_[m] <= index)
            return {m, static_cast<int>(index - offset_[m]) + 1};
    throw std::out_of_range("bit index out of range");
}

BitRow symbol_row(const BitLayout& layout, const Symbol& s) {
    BitRow row(layout.total());
    for (const Term& t : s.terms)
        row.flip(layout.index(t.message, t.bit));
    return row;
}

} // namespace uniprior
