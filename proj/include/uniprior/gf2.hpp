#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace uniprior {

// Fixed-width row vector over GF(2), packed 64 coordinates per word.
class BitRow {
public:
    BitRow() = default;
    explicit BitRow(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

    std::size_t width() const noexcept { return width_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    bool none() const;
    std::optional<std::size_t> lowest() const;
    BitRow& operator^=(const BitRow& other);

    bool operator==(const BitRow&) const = default;

private:
    std::size_t width_ = 0;
    std::vector<std::uint64_t> words_;
};

// Incrementally built row space with one stored row per pivot column.
// Each stored row has its pivot as its lowest set coordinate.
class Gf2Basis {
public:
    explicit Gf2Basis(std::size_t width) : width_(width), by_pivot_(width) {}

    std::size_t rank() const noexcept { return rank_; }
    // Reduces v against the basis; the result is zero iff v is in the span.
    BitRow reduce(BitRow v) const;
    bool contains(const BitRow& v) const { return reduce(v).none(); }
    // Returns true when v was independent and has been added.
    bool insert(const BitRow& v);

private:
    std::size_t width_;
    std::size_t rank_ = 0;
    std::vector<std::optional<BitRow>> by_pivot_;
};

// Rank of a set of rows.
std::size_t gf2_rank(const std::vector<BitRow>& rows);

} // namespace uniprior
