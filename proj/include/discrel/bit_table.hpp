#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "discrel/errors.hpp"

namespace discrel {

/// Fixed-length packed bit sequence; the storage behind every relation.
///
/// Bits are stored little-endian inside 64-bit words: bit i lives in word
/// i / 64 at position i % 64. Bits past size() in the last word are kept at
/// zero so that word-wise comparisons and popcounts need no masking.
class BitTable {
  public:
    using word_type = std::uint64_t;
    static constexpr std::size_t word_bits = 64;

    BitTable() = default;
    explicit BitTable(std::size_t size, bool value = false)
        : size_(size), words_((size + word_bits - 1) / word_bits, value ? ~word_type{0} : word_type{0}) {
        trim();
    }

    /// Parses a string over {0,1}; character i becomes bit i.
    static BitTable from_string(std::string_view text) {
        BitTable t(text.size());
        for (std::size_t i = 0; i < text.size(); ++i) {
            if (text[i] == '1') {
                t.set(i);
            } else if (text[i] != '0') {
                throw FormatError("bit string contains '" + std::string(1, text[i]) + "' at position " +
                                  std::to_string(i));
            }
        }
        return t;
    }

    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] bool test(std::size_t i) const noexcept { return (words_[i / word_bits] >> (i % word_bits)) & 1U; }
    void set(std::size_t i, bool v = true) noexcept {
        const word_type mask = word_type{1} << (i % word_bits);
        if (v)
            words_[i / word_bits] |= mask;
        else
            words_[i / word_bits] &= ~mask;
    }
    void reset(std::size_t i) noexcept { set(i, false); }

    [[nodiscard]] std::size_t count() const noexcept {
        std::size_t n = 0;
        for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }
    [[nodiscard]] bool none() const noexcept {
        return std::all_of(words_.begin(), words_.end(), [](word_type w) { return w == 0; });
    }
    [[nodiscard]] bool all() const noexcept { return count() == size_; }

    /// True iff every set bit of *this is also set in other.
    [[nodiscard]] bool is_subset_of(const BitTable& other) const noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w] & ~other.words_[w]) return false;
        return true;
    }

    BitTable& operator&=(const BitTable& o) noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
        return *this;
    }
    BitTable& operator|=(const BitTable& o) noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
        return *this;
    }
    BitTable& operator^=(const BitTable& o) noexcept {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
        return *this;
    }
    BitTable& flip() noexcept {
        for (auto& w : words_) w = ~w;
        trim();
        return *this;
    }

    friend BitTable operator&(BitTable a, const BitTable& b) noexcept { return a &= b; }
    friend BitTable operator|(BitTable a, const BitTable& b) noexcept { return a |= b; }
    friend BitTable operator^(BitTable a, const BitTable& b) noexcept { return a ^= b; }
    friend BitTable operator~(BitTable a) noexcept { return a.flip(); }
    friend bool operator==(const BitTable&, const BitTable&) = default;

    /// Index of the first set bit at or after `from`, or size() if none.
    [[nodiscard]] std::size_t find_next(std::size_t from) const noexcept {
        if (from >= size_) return size_;
        std::size_t w = from / word_bits;
        word_type cur = words_[w] & (~word_type{0} << (from % word_bits));
        while (true) {
            if (cur) return std::min(size_, w * word_bits + static_cast<std::size_t>(std::countr_zero(cur)));
            if (++w == words_.size()) return size_;
            cur = words_[w];
        }
    }
    [[nodiscard]] std::size_t find_first() const noexcept { return find_next(0); }

    /// Calls f(i) for every set bit, in increasing order.
    template <typename F>
    void for_each_set(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            word_type cur = words_[w];
            while (cur) {
                f(w * word_bits + static_cast<std::size_t>(std::countr_zero(cur)));
                cur &= cur - 1;
            }
        }
    }

    [[nodiscard]] std::string to_string() const {
        std::string s(size_, '0');
        for_each_set([&](std::size_t i) { s[i] = '1'; });
        return s;
    }

    [[nodiscard]] const std::vector<word_type>& words() const noexcept { return words_; }

  private:
    void trim() noexcept {
        if (size_ % word_bits && !words_.empty()) words_.back() &= (word_type{1} << (size_ % word_bits)) - 1;
    }

    std::size_t size_ = 0;
    std::vector<word_type> words_;
};

} // namespace discrel
