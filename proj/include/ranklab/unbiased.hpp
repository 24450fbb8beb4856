#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ranklab/ops.hpp"

namespace ranklab {

/// All 2^n bit strings of length n (n <= 24).
std::vector<BitString> all_bitstrings(std::size_t n);

/// All n! permutations of [n] (n <= 8).
std::vector<Permutation> all_permutations(std::size_t n);

/// A concrete violation of one of the two Def-3 invariance conditions:
/// densities of the candidate differ between the original and the
/// shifted/permuted instance.
struct BiasWitness {
    std::string condition;  // "xor-shift" or "permutation"
    std::vector<BitString> inputs;
    BitString shift;                   // xor-shift witnesses
    std::vector<std::size_t> perm;     // permutation witnesses (images, 0-based)
    BitString candidate;
    Rational lhs, rhs;

    std::string describe(const std::string& op_name) const;
};

struct UnbiasedCheckResult {
    bool passed = true;
    std::optional<BiasWitness> witness;
    std::uint64_t comparisons = 0;
};

/// Exhaustive Def-3 check: for every input tuple, every shift z and every
/// permutation sigma, the density of every candidate must match exactly.
/// Input tuples failing the operator's precondition are skipped (the
/// precondition itself is shift- and permutation-invariant). Deterministic
/// operators are checked through their point-mass outputs, which is the same
/// equality (the generic path is cross-checked in the tests).
UnbiasedCheckResult check_unbiased_exhaustive(const ops::VariationOperator& op, std::size_t n);

/// Randomized spot-check of the same exact equalities, for n beyond the
/// exhaustive range.
UnbiasedCheckResult check_unbiased_sampled(const ops::VariationOperator& op, std::size_t n,
                                           std::size_t rounds, Rng& rng);

/// Sum of the density over all of {0,1}^n equals 1 for every input tuple.
UnbiasedCheckResult check_density_normalization(const ops::VariationOperator& op, std::size_t n);

}  // namespace ranklab
