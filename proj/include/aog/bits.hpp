#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace aog {

/// Fixed-length dynamic bitset used for vertex sets and reachability rows.
class BitRow {
public:
    BitRow() = default;
    explicit BitRow(int bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    int size() const { return bits_; }

    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    int count() const {
        int c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    BitRow& operator|=(const BitRow& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    BitRow& operator&=(const BitRow& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    friend BitRow operator&(BitRow a, const BitRow& b) { return a &= b; }
    friend BitRow operator|(BitRow a, const BitRow& b) { return a |= b; }
    friend bool operator==(const BitRow&, const BitRow&) = default;

    /// Calls f(i) for every set bit in increasing order.
    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word) {
                int b = std::countr_zero(word);
                f(static_cast<int>(w * 64 + b));
                word &= word - 1;
            }
        }
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    int bits_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Square bit matrix stored as one BitRow per vertex.
class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(int n) : rows_(n, BitRow(n)) {}

    int size() const { return static_cast<int>(rows_.size()); }
    bool test(int r, int c) const { return rows_[r].test(c); }
    void set(int r, int c) { rows_[r].set(c); }
    const BitRow& row(int r) const { return rows_[r]; }
    BitRow& row(int r) { return rows_[r]; }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::vector<BitRow> rows_;
};

}  // namespace aog
