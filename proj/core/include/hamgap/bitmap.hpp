#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hamgap {

/// Fixed-width bitset over 64-bit words with direct word access, used for
/// residue sets and the word-parallel Hamming dilation.
class Bitmap {
public:
    Bitmap() = default;
    explicit Bitmap(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

    std::size_t size() const { return bits_; }
    std::size_t word_count() const { return words_.size(); }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    /// Number of set bits in [lo, hi).
    std::size_t count_range(std::size_t lo, std::size_t hi) const;

    /// True iff every bit of `other` is also set here. Sizes must match.
    bool contains(const Bitmap& other) const;

    Bitmap& operator|=(const Bitmap& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    std::span<std::uint64_t> words() { return words_; }
    std::span<const std::uint64_t> words() const { return words_; }

    /// Indices of set bits, ascending.
    std::vector<std::uint64_t> to_vector() const;

    bool operator==(const Bitmap&) const = default;

private:
    std::size_t bits_ = 0;
    std::vector<std::uint64_t> words_;
};

inline std::size_t Bitmap::count_range(std::size_t lo, std::size_t hi) const {
    std::size_t c = 0;
    for (std::size_t i = lo; i < hi;) {
        if ((i & 63) == 0 && i + 64 <= hi) {
            c += static_cast<std::size_t>(std::popcount(words_[i >> 6]));
            i += 64;
        } else {
            c += test(i);
            ++i;
        }
    }
    return c;
}

inline bool Bitmap::contains(const Bitmap& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if ((other.words_[i] & ~words_[i]) != 0) return false;
    return true;
}

inline std::vector<std::uint64_t> Bitmap::to_vector() const {
    std::vector<std::uint64_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t word = words_[w];
        while (word != 0) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
            word &= word - 1;
        }
    }
    return out;
}

}  // namespace hamgap
