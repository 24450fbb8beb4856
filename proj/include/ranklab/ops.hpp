#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ranklab/bitstring.hpp"
#include "ranklab/exact.hpp"
#include "ranklab/rng.hpp"

namespace ranklab::ops {

/// Exact n-choose-k.
Int binomial(std::size_t n, std::size_t k);

inline Rational rat(Int num, Int den) {
    Rational r(std::move(num));
    r /= Rational(std::move(den));
    return r;
}

// --- samplers ---------------------------------------------------------------
// Every operator is defined purely in terms of the agree/disagree patterns of
// its inputs, never absolute positions or bit values; that discipline is what
// makes them unbiased, and check_unbiased() is the enforcement mechanism.

/// 0-ary: uniform over {0,1}^n.
BitString uniform_sample(std::size_t n, Rng& rng);

/// Unary: flip one uniformly chosen position (the RLS mutation).
BitString flip_uniform_bit(const BitString& x, Rng& rng);

/// Unary: bitwise complement.
BitString complement(const BitString& x);

/// Binary, symmetric: pick j uniformly from the positions where x and y
/// differ; return x xor e_j with probability 1/2, else y xor e_j.
/// Undefined (throws) when x = y.
BitString flip_one_where_different(const BitString& x, const BitString& y, Rng& rng);

/// Binary, deterministic: x if hamming(x, w) = 1, else w.
BitString dist1(const BitString& x, const BitString& w);

/// Binary: flip k' := min(k, |diff(x,y)|) uniformly chosen differing
/// positions in x (first argument only). Undefined (throws) when x = y.
BitString flip_k_where_different(const BitString& x, const BitString& y, std::size_t k, Rng& rng);

/// Binary: agree with x wherever x and anchor agree, uniform elsewhere.
BitString sample_block_uniform(const BitString& x, const BitString& anchor, Rng& rng);

/// Ternary, deterministic: complement a on the disagreement set of (b, c),
/// copy a elsewhere.
BitString block_complement(const BitString& a, const BitString& b, const BitString& c);

/// 4-ary, deterministic: copy zj where x and x1 differ, copy y elsewhere.
BitString update4(const BitString& y, const BitString& x, const BitString& x1, const BitString& zj);

/// Ternary, deterministic: yp where xp = w, xp where xp != w.
BitString update2(const BitString& yp, const BitString& xp, const BitString& w);

/// Binary, deterministic: complement xp on the agreement set O(xp,yp), copy
/// xp (initialize1) or yp (initialize2) elsewhere.
BitString initialize1(const BitString& xp, const BitString& yp);
BitString initialize2(const BitString& xp, const BitString& yp);

/// 5-ary, deterministic: complement zj on O(xp,yp) and wherever x != x1,
/// copy zj elsewhere.
BitString test5(const BitString& zj, const BitString& xp, const BitString& yp, const BitString& x,
                const BitString& x1);

/// Ternary, deterministic: complement x on O(xp,yp), copy x elsewhere.
BitString finish(const BitString& x, const BitString& xp, const BitString& yp);

/// The agree/disagree partition cells of a query history: positions grouped
/// by their pattern of flips across consecutive history pairs. One cell
/// (all of [n]) for a single-element history.
std::vector<std::vector<std::size_t>> partition_cells(std::span<const BitString> history);

/// l-ary: relative to the last history string, flip a uniformly chosen
/// floor(|cell|/2)-subset within every partition cell, independently per
/// cell. Uniform over the set of all such strings.
BitString flip_half(std::span<const BitString> history, Rng& rng);

// --- exact densities ---------------------------------------------------------

Rational density_uniform(const BitString& cand);
Rational density_flip_uniform_bit(const BitString& cand, const BitString& x);
Rational density_flip_one_where_different(const BitString& cand, const BitString& x,
                                          const BitString& y);
Rational density_flip_k_where_different(const BitString& cand, const BitString& x,
                                        const BitString& y, std::size_t k);
Rational density_sample_block_uniform(const BitString& cand, const BitString& x,
                                      const BitString& anchor);
Rational density_flip_half(const BitString& cand, std::span<const BitString> history);

/// Uniform over F(w...) = {y : agreement(y, w_i) = v_i for all i}; uniform
/// over the whole cube when F is empty. Enumerates 2^n, so n must be small.
BitString sample_feasible(std::span<const BitString> inputs, std::span<const std::size_t> values,
                          Rng& rng);
Rational density_feasible(const BitString& cand, std::span<const BitString> inputs,
                          std::span<const std::size_t> values);

// --- catalogue ---------------------------------------------------------------

/// An arity-k sampler paired with its exact distribution evaluator. The
/// evaluator is what the unbiasedness checks certify; the sampler must agree
/// with it (statistically checked in the tests).
struct VariationOperator {
    std::string name;
    std::size_t arity = 0;
    bool deterministic = false;
    std::function<bool(std::span<const BitString>)> valid;  // precondition; null = always
    std::function<BitString(std::span<const BitString>, Rng&)> sample;
    std::function<Rational(const BitString&, std::span<const BitString>)> density;
    std::function<BitString(std::span<const BitString>)> output;  // deterministic ops only

    bool accepts(std::span<const BitString> inputs) const { return !valid || valid(inputs); }
};

/// Every operator the algorithms use, with small fixed parameters for the
/// parameterised ones (flip-k levels, flip-half history lengths, one
/// feasible-set value tuple).
std::vector<VariationOperator> catalogue(std::size_t n);

/// Control operator that ignores its input and returns the all-zeros string;
/// a point mass at a fixed string cannot be xor-invariant.
VariationOperator biased_control();

}  // namespace ranklab::ops
