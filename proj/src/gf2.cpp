#include "uniprior/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace uniprior {

bool BitRow::none() const {
    for (auto w : words_)
        if (w)
            return false;
    return true;
}

std::optional<std::size_t> BitRow::lowest() const {
    for (std::size_t k = 0; k < words_.size(); ++k)
        if (words_[k])
            return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return std::nullopt;
}

BitRow& BitRow::operator^=(const BitRow& other) {
    if (other.width_ != width_)
        throw std::invalid_argument("BitRow width mismatch");
    for (std::size_t k = 0; k < words_.size(); ++k)
        words_[k] ^= other.words_[k];
    return *this;
}

BitRow Gf2Basis::reduce(BitRow v) const {
    // Stored rows have distinct lowest pivots, so clearing pivots in
    // ascending order never reintroduces an already cleared one.
    for (std::size_t col = 0; col < width_; ++col) {
        if (v.get(col) && by_pivot_[col])
            v ^= *by_pivot_[col];
    }
    return v;
}

bool Gf2Basis::insert(const BitRow& v) {
    BitRow r = reduce(v);
    auto pivot = r.lowest();
    if (!pivot)
        return false;
    by_pivot_[*pivot] = std::move(r);
    ++rank_;
    return true;
}

std::size_t gf2_rank(const std::vector<BitRow>& rows) {
    if (rows.empty())
        return 0;
    Gf2Basis basis(rows.front().width());
    for (const auto& r : rows)
        basis.insert(r);
    return basis.rank();
}

} // namespace uniprior
