#include "ranklab/ops.hpp"

#include <algorithm>

namespace ranklab::ops {

Int binomial(std::size_t n, std::size_t k) {
    Int r;
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

BitString uniform_sample(std::size_t n, Rng& rng) { return rng.bits(n); }

BitString flip_uniform_bit(const BitString& x, Rng& rng) {
    BitString r = x;
    r.flip(static_cast<std::size_t>(rng.below(x.size())));
    return r;
}

BitString complement(const BitString& x) { return x.complemented(); }

BitString flip_one_where_different(const BitString& x, const BitString& y, Rng& rng) {
    const auto diff = differing_positions(x, y);
    if (diff.empty()) throw DimensionError("flip_one_where_different requires x != y");
    const std::size_t j = diff[static_cast<std::size_t>(rng.below(diff.size()))];
    BitString r = rng.coin() ? x : y;
    r.flip(j);
    return r;
}

BitString dist1(const BitString& x, const BitString& w) {
    return hamming(x, w) == 1 ? x : w;
}

BitString flip_k_where_different(const BitString& x, const BitString& y, std::size_t k, Rng& rng) {
    auto diff = differing_positions(x, y);
    if (diff.empty()) throw DimensionError("flip_k_where_different requires x != y");
    const std::size_t kp = std::min(k, diff.size());
    BitString r = x;
    for (std::size_t j : rng.subset(std::move(diff), kp)) r.flip(j);
    return r;
}

BitString sample_block_uniform(const BitString& x, const BitString& anchor, Rng& rng) {
    BitString r = x;
    for (std::size_t j : differing_positions(x, anchor))
        if (rng.coin()) r.flip(j);
    return r;
}

BitString block_complement(const BitString& a, const BitString& b, const BitString& c) {
    a.require_same_size(b);
    BitString r = a;
    for (std::size_t j : differing_positions(b, c)) r.flip(j);
    return r;
}

BitString update4(const BitString& y, const BitString& x, const BitString& x1, const BitString& zj) {
    y.require_same_size(x);
    y.require_same_size(zj);
    BitString r = y;
    for (std::size_t j : differing_positions(x, x1)) r.set(j, zj.test(j));
    return r;
}

BitString update2(const BitString& yp, const BitString& xp, const BitString& w) {
    yp.require_same_size(xp);
    BitString r = yp;
    for (std::size_t j : differing_positions(xp, w)) r.set(j, xp.test(j));
    return r;
}

BitString initialize1(const BitString& xp, const BitString& yp) {
    BitString r = xp;
    for (std::size_t j : agreeing_positions(xp, yp)) r.flip(j);
    return r;
}

BitString initialize2(const BitString& xp, const BitString& yp) {
    BitString r = yp;
    for (std::size_t j : agreeing_positions(xp, yp)) r.set(j, !xp.test(j));
    return r;
}

BitString test5(const BitString& zj, const BitString& xp, const BitString& yp, const BitString& x,
                const BitString& x1) {
    zj.require_same_size(x);
    zj.require_same_size(xp);
    BitString r = zj;
    for (std::size_t j = 0; j < zj.size(); ++j)
        if (xp.test(j) == yp.test(j) || x.test(j) != x1.test(j)) r.flip(j);
    return r;
}

BitString finish(const BitString& x, const BitString& xp, const BitString& yp) {
    x.require_same_size(xp);
    BitString r = x;
    for (std::size_t j : agreeing_positions(xp, yp)) r.flip(j);
    return r;
}

std::vector<std::vector<std::size_t>> partition_cells(std::span<const BitString> history) {
    if (history.empty()) throw DimensionError("partition_cells requires a non-empty history");
    const std::size_t n = history[0].size();
    const std::size_t levels = history.size() - 1;
    // Pattern of a position: one bit per consecutive history pair.
    std::vector<std::uint64_t> pattern(n, 0);
    for (std::size_t k = 0; k < levels; ++k) {
        for (std::size_t p : differing_positions(history[k], history[k + 1]))
            pattern[p] |= std::uint64_t{1} << k;
    }
    std::vector<std::vector<std::size_t>> cells(std::size_t{1} << std::min<std::size_t>(levels, 63));
    if (levels >= 63) throw DimensionError("history too long for partition_cells");
    for (std::size_t p = 0; p < n; ++p) cells[pattern[p]].push_back(p);
    std::erase_if(cells, [](const auto& c) { return c.empty(); });
    return cells;
}

BitString flip_half(std::span<const BitString> history, Rng& rng) {
    BitString r = history.back();
    for (const auto& cell : partition_cells(history)) {
        for (std::size_t j : rng.subset(cell, cell.size() / 2)) r.flip(j);
    }
    return r;
}

// --- densities ---------------------------------------------------------------

Rational density_uniform(const BitString& cand) {
    return rat(1, pow2(cand.size()));
}

Rational density_flip_uniform_bit(const BitString& cand, const BitString& x) {
    if (hamming(cand, x) != 1) return 0;
    return rat(1, Int(static_cast<unsigned long>(x.size())));
}

Rational density_flip_one_where_different(const BitString& cand, const BitString& x,
                                          const BitString& y) {
    const std::size_t h = hamming(x, y);
    if (h == 0) throw DimensionError("flip_one_where_different requires x != y");
    Int hits = 0;
    if (hamming(cand, x) == 1) {
        const std::size_t j = differing_positions(cand, x)[0];
        if (x.test(j) != y.test(j)) hits += 1;
    }
    if (hamming(cand, y) == 1) {
        const std::size_t j = differing_positions(cand, y)[0];
        if (x.test(j) != y.test(j)) hits += 1;
    }
    return rat(hits, 2 * Int(static_cast<unsigned long>(h)));
}

Rational density_flip_k_where_different(const BitString& cand, const BitString& x,
                                        const BitString& y, std::size_t k) {
    const std::size_t h = hamming(x, y);
    if (h == 0) throw DimensionError("flip_k_where_different requires x != y");
    const std::size_t kp = std::min(k, h);
    const auto flipped = differing_positions(cand, x);
    if (flipped.size() != kp) return 0;
    for (std::size_t j : flipped)
        if (x.test(j) == y.test(j)) return 0;
    return rat(1, binomial(h, kp));
}

Rational density_sample_block_uniform(const BitString& cand, const BitString& x,
                                      const BitString& anchor) {
    for (std::size_t j : agreeing_positions(x, anchor))
        if (cand.test(j) != x.test(j)) return 0;
    return rat(1, pow2(hamming(x, anchor)));
}

Rational density_flip_half(const BitString& cand, std::span<const BitString> history) {
    const BitString& last = history.back();
    Rational p = 1;
    for (const auto& cell : partition_cells(history)) {
        std::size_t flipped = 0;
        for (std::size_t j : cell)
            if (cand.test(j) != last.test(j)) ++flipped;
        if (flipped != cell.size() / 2) return 0;
        p *= rat(1, binomial(cell.size(), cell.size() / 2));
    }
    return p;
}

namespace {

std::vector<BitString> enumerate_feasible(std::span<const BitString> inputs,
                                          std::span<const std::size_t> values) {
    const std::size_t n = inputs[0].size();
    if (n > 24) throw DimensionError("feasible-set operator limited to n <= 24");
    std::vector<BitString> members;
    BitString cand(n);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        for (std::size_t i = 0; i < n; ++i) cand.set(i, (v >> i) & 1u);
        bool ok = true;
        for (std::size_t i = 0; i < inputs.size() && ok; ++i)
            ok = agreement(cand, inputs[i]) == values[i];
        if (ok) members.push_back(cand);
    }
    return members;
}

}  // namespace

BitString sample_feasible(std::span<const BitString> inputs, std::span<const std::size_t> values,
                          Rng& rng) {
    const auto members = enumerate_feasible(inputs, values);
    if (members.empty()) return rng.bits(inputs[0].size());
    return members[static_cast<std::size_t>(rng.below(members.size()))];
}

Rational density_feasible(const BitString& cand, std::span<const BitString> inputs,
                          std::span<const std::size_t> values) {
    const auto members = enumerate_feasible(inputs, values);
    if (members.empty()) return rat(1, pow2(cand.size()));
    const bool in = std::find(members.begin(), members.end(), cand) != members.end();
    if (!in) return 0;
    return rat(1, Int(static_cast<unsigned long>(members.size())));
}

// --- catalogue ---------------------------------------------------------------

namespace {

VariationOperator det(std::string name, std::size_t arity,
                      std::function<BitString(std::span<const BitString>)> out) {
    VariationOperator op;
    op.name = std::move(name);
    op.arity = arity;
    op.deterministic = true;
    op.output = out;
    op.sample = [out](std::span<const BitString> in, Rng&) { return out(in); };
    op.density = [out](const BitString& cand, std::span<const BitString> in) -> Rational {
        return cand == out(in) ? 1 : 0;
    };
    return op;
}

bool distinct_pair(std::span<const BitString> in) { return in[0] != in[1]; }

}  // namespace

std::vector<VariationOperator> catalogue(std::size_t n) {
    std::vector<VariationOperator> ops;

    {
        VariationOperator op;
        op.name = "uniform";
        op.arity = 0;
        op.sample = [n](std::span<const BitString>, Rng& rng) { return uniform_sample(n, rng); };
        op.density = [](const BitString& cand, std::span<const BitString>) {
            return density_uniform(cand);
        };
        ops.push_back(std::move(op));
    }
    {
        VariationOperator op;
        op.name = "flip_uniform_bit";
        op.arity = 1;
        op.sample = [](std::span<const BitString> in, Rng& rng) {
            return flip_uniform_bit(in[0], rng);
        };
        op.density = [](const BitString& cand, std::span<const BitString> in) {
            return density_flip_uniform_bit(cand, in[0]);
        };
        ops.push_back(std::move(op));
    }
    ops.push_back(det("complement", 1,
                      [](std::span<const BitString> in) { return complement(in[0]); }));
    {
        VariationOperator op;
        op.name = "flip_one_where_different";
        op.arity = 2;
        op.valid = distinct_pair;
        op.sample = [](std::span<const BitString> in, Rng& rng) {
            return flip_one_where_different(in[0], in[1], rng);
        };
        op.density = [](const BitString& cand, std::span<const BitString> in) {
            return density_flip_one_where_different(cand, in[0], in[1]);
        };
        ops.push_back(std::move(op));
    }
    ops.push_back(det("dist1", 2, [](std::span<const BitString> in) { return dist1(in[0], in[1]); }));
    for (std::size_t k : {std::size_t{1}, std::size_t{2}}) {
        VariationOperator op;
        op.name = "flip_k_where_different[k=" + std::to_string(k) + "]";
        op.arity = 2;
        op.valid = distinct_pair;
        op.sample = [k](std::span<const BitString> in, Rng& rng) {
            return flip_k_where_different(in[0], in[1], k, rng);
        };
        op.density = [k](const BitString& cand, std::span<const BitString> in) {
            return density_flip_k_where_different(cand, in[0], in[1], k);
        };
        ops.push_back(std::move(op));
    }
    {
        VariationOperator op;
        op.name = "sample_block_uniform";
        op.arity = 2;
        op.sample = [](std::span<const BitString> in, Rng& rng) {
            return sample_block_uniform(in[0], in[1], rng);
        };
        op.density = [](const BitString& cand, std::span<const BitString> in) {
            return density_sample_block_uniform(cand, in[0], in[1]);
        };
        ops.push_back(std::move(op));
    }
    ops.push_back(det("block_complement", 3, [](std::span<const BitString> in) {
        return block_complement(in[0], in[1], in[2]);
    }));
    ops.push_back(det("update4", 4, [](std::span<const BitString> in) {
        return update4(in[0], in[1], in[2], in[3]);
    }));
    ops.push_back(det("update2", 3, [](std::span<const BitString> in) {
        return update2(in[0], in[1], in[2]);
    }));
    ops.push_back(det("initialize1", 2, [](std::span<const BitString> in) {
        return initialize1(in[0], in[1]);
    }));
    ops.push_back(det("initialize2", 2, [](std::span<const BitString> in) {
        return initialize2(in[0], in[1]);
    }));
    ops.push_back(det("test5", 5, [](std::span<const BitString> in) {
        return test5(in[0], in[1], in[2], in[3], in[4]);
    }));
    ops.push_back(det("finish", 3, [](std::span<const BitString> in) {
        return finish(in[0], in[1], in[2]);
    }));
    for (std::size_t ell : {std::size_t{1}, std::size_t{2}, std::size_t{3}}) {
        VariationOperator op;
        op.name = "flip_half[l=" + std::to_string(ell) + "]";
        op.arity = ell;
        op.sample = [](std::span<const BitString> in, Rng& rng) { return flip_half(in, rng); };
        op.density = [](const BitString& cand, std::span<const BitString> in) {
            return density_flip_half(cand, in);
        };
        ops.push_back(std::move(op));
    }
    {
        // One representative decoded-value tuple; any fixed tuple gives an
        // unbiased family.
        std::vector<std::size_t> values = {(n + 1) / 2, (n + 1) / 2 >= 1 ? (n + 1) / 2 - 1 : 0};
        VariationOperator op;
        op.name = "uniform_from_feasible[v=(" + std::to_string(values[0]) + "," +
                  std::to_string(values[1]) + ")]";
        op.arity = 2;
        op.sample = [values](std::span<const BitString> in, Rng& rng) {
            return sample_feasible(in, values, rng);
        };
        op.density = [values](const BitString& cand, std::span<const BitString> in) {
            return density_feasible(cand, in, values);
        };
        ops.push_back(std::move(op));
    }
    return ops;
}

VariationOperator biased_control() {
    VariationOperator op;
    op.name = "always_zero (control)";
    op.arity = 1;
    op.deterministic = true;
    op.output = [](std::span<const BitString> in) { return BitString::zeros(in[0].size()); };
    op.sample = [](std::span<const BitString> in, Rng&) { return BitString::zeros(in[0].size()); };
    op.density = [](const BitString& cand, std::span<const BitString> in) -> Rational {
        return cand == BitString::zeros(in[0].size()) ? 1 : 0;
    };
    return op;
}

}  // namespace ranklab::ops
