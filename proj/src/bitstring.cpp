#include "ranklab/bitstring.hpp"

#include <algorithm>

namespace ranklab {

std::vector<std::size_t> differing_positions(const BitString& x, const BitString& y) {
    x.require_same_size(y);
    std::vector<std::size_t> out;
    out.reserve(hamming(x, y));
    for (std::size_t w = 0; w < x.words().size(); ++w) {
        std::uint64_t d = x.words()[w] ^ y.words()[w];
        while (d) {
            const int b = __builtin_ctzll(d);
            out.push_back(w * 64 + static_cast<std::size_t>(b));
            d &= d - 1;
        }
    }
    return out;
}

std::vector<std::size_t> agreeing_positions(const BitString& x, const BitString& y) {
    x.require_same_size(y);
    std::vector<std::size_t> out;
    out.reserve(agreement(x, y));
    std::size_t pos = 0;
    for (std::size_t w = 0; w < x.words().size(); ++w) {
        std::uint64_t a = ~(x.words()[w] ^ y.words()[w]);
        for (std::size_t b = 0; b < 64 && pos < x.size(); ++b, ++pos)
            if ((a >> b) & 1u) out.push_back(pos);
    }
    return out;
}

Permutation Permutation::from_images(std::vector<std::size_t> images) {
    std::vector<bool> seen(images.size(), false);
    for (auto v : images) {
        if (v >= images.size() || seen[v])
            throw DimensionError("permutation images must form a bijection on [n]");
        seen[v] = true;
    }
    Permutation p;
    p.map_ = std::move(images);
    return p;
}

BitString Permutation::apply(const BitString& x) const {
    if (x.size() != map_.size()) throw DimensionError("permutation/bit-string dimensions differ");
    BitString r(x.size());
    for (std::size_t i = 0; i < map_.size(); ++i) r.set(i, x.test(map_[i]));
    return r;
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
    Permutation p;
    p.map_ = std::move(inv);
    return p;
}

}  // namespace ranklab
