#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ranklab/errors.hpp"

namespace ranklab {

/// Fixed-length binary vector packed into 64-bit words. The length is set at
/// construction and never changes; all binary operations demand equal lengths.
class BitString {
  public:
    BitString() = default;
    explicit BitString(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

    static BitString zeros(std::size_t n) { return BitString(n); }

    static BitString ones(std::size_t n) {
        BitString b(n);
        for (auto& w : b.words_) w = ~std::uint64_t{0};
        b.mask_tail();
        return b;
    }

    /// Parse "10110"-style literals; index 0 of the string is bit 1.
    static BitString from_string(std::string_view s) {
        BitString b(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                b.set(i, true);
            else if (s[i] != '0')
                throw DimensionError("bit-string literal may contain only 0 and 1");
        }
        return b;
    }

    std::size_t size() const { return n_; }
    bool empty() const { return n_ == 0; }

    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

    void set(std::size_t i, bool v) {
        const std::uint64_t bit = std::uint64_t{1} << (i % 64);
        if (v)
            words_[i / 64] |= bit;
        else
            words_[i / 64] &= ~bit;
    }

    void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

    /// Number of one-bits, |x|_1.
    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    BitString operator^(const BitString& o) const {
        require_same_size(o);
        BitString r(n_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] ^ o.words_[i];
        return r;
    }

    BitString& operator^=(const BitString& o) {
        require_same_size(o);
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
        return *this;
    }

    BitString complemented() const {
        BitString r(n_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
        r.mask_tail();
        return r;
    }

    bool operator==(const BitString&) const = default;

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (test(i)) s[i] = '1';
        return s;
    }

    std::span<const std::uint64_t> words() const { return words_; }

    /// Low 64 bits as an integer (bit i of the string is bit i of the word).
    std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

    void require_same_size(const BitString& o) const {
        if (n_ != o.n_) throw DimensionError("bit-string dimensions differ");
    }

  private:
    void mask_tail() {
        if (n_ % 64 != 0 && !words_.empty())
            words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Hamming distance |x xor y|_1.
inline std::size_t hamming(const BitString& x, const BitString& y) {
    x.require_same_size(y);
    std::size_t c = 0;
    for (std::size_t i = 0; i < x.words().size(); ++i)
        c += static_cast<std::size_t>(__builtin_popcountll(x.words()[i] ^ y.words()[i]));
    return c;
}

/// Number of positions where x and y coincide, n - hamming(x, y).
inline std::size_t agreement(const BitString& x, const BitString& y) {
    return x.size() - hamming(x, y);
}

/// 0-based positions where x and y differ.
std::vector<std::size_t> differing_positions(const BitString& x, const BitString& y);

/// 0-based positions where x and y agree.
std::vector<std::size_t> agreeing_positions(const BitString& x, const BitString& y);

/// Bijection on [n]. Stored 0-based: image(i) is the 0-based image of i.
class Permutation {
  public:
    Permutation() = default;

    static Permutation identity(std::size_t n) {
        Permutation p;
        p.map_.resize(n);
        for (std::size_t i = 0; i < n; ++i) p.map_[i] = i;
        return p;
    }

    /// Validates that the mapping is a bijection.
    static Permutation from_images(std::vector<std::size_t> images);

    std::size_t size() const { return map_.size(); }
    std::size_t operator()(std::size_t i) const { return map_[i]; }

    /// sigma(x) := x_{sigma(1)} ... x_{sigma(n)} — result bit i is x's bit sigma(i).
    BitString apply(const BitString& x) const;

    Permutation inverse() const;

    bool operator==(const Permutation&) const = default;
    const std::vector<std::size_t>& images() const { return map_; }

  private:
    std::vector<std::size_t> map_;
};

struct BitStringHash {
    std::size_t operator()(const BitString& b) const {
        std::size_t h = b.size() * 0x9e3779b97f4a7c15ull;
        for (auto w : b.words()) {
            h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

}  // namespace ranklab
