#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ranklab/bitstring.hpp"

namespace ranklab {

/// splitmix64 finalizer; used to derive per-trial seeds from (base, index) so
/// any trial can be reproduced in isolation.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
    return mix64(base_seed ^ mix64(index + 1));
}

/// Per-run randomness stream. All stochastic choices of a run flow from one
/// of these; bounded draws use rejection so results depend only on the engine.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % bound;
    }

    bool coin() { return engine_() & 1u; }

    /// Uniform bit string of length n, each of the 2^n strings equally likely.
    BitString bits(std::size_t n) {
        BitString b(n);
        for (std::size_t i = 0; i < n; i += 64) {
            const std::uint64_t w = engine_();
            for (std::size_t j = 0; j < 64 && i + j < n; ++j)
                if ((w >> j) & 1u) b.set(i + j, true);
        }
        return b;
    }

    /// Uniform k-subset of pool (partial Fisher-Yates); order unspecified.
    std::vector<std::size_t> subset(std::vector<std::size_t> pool, std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(below(pool.size() - i));
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        return pool;
    }

    Permutation permutation(std::size_t n) {
        std::vector<std::size_t> images(n);
        for (std::size_t i = 0; i < n; ++i) images[i] = i;
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(images[i - 1], images[j]);
        }
        return Permutation::from_images(std::move(images));
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace ranklab
