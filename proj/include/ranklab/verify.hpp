#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ranklab/bitstring.hpp"
#include "ranklab/exact.hpp"

namespace ranklab {

/// For pairwise-distinct strings, computes l_{i,j} = the highest 1-based
/// position where strings i and j differ, over all pairs, and returns the
/// number of distinct values. Never exceeds t - 1.
std::size_t distinct_ell_count(std::span<const BitString> strings);

/// All pairwise l values (1-based), for inspection.
std::vector<std::size_t> ell_values(std::span<const BitString> strings);

/// Number of candidate targets z' whose induced ranking of the query prefix
/// x^(1..t) matches the ranking induced by the true target, for every prefix
/// length t = 1..|queries|. Candidates are enumerated exhaustively (n <= 24).
/// The instance is plain BinaryValue (identity permutation).
std::vector<std::uint64_t> consistent_targets_bv_prefixes(std::span<const BitString> queries,
                                                          const BitString& target);

/// Single-prefix convenience wrapper.
std::uint64_t consistent_targets_bv(std::span<const BitString> queries, const BitString& target);

struct Lemma8Check {
    bool ok = true;
    std::size_t violating_ell = 0;  // meaningful when !ok
};

/// Verifies C(n, l) * 2^-n >= beta * n^{-1/2} with beta = e^{-4 kappa^2} / (2 sqrt(pi))
/// for every integer l in [n/2 - kappa*sqrt(n), n/2 + kappa*sqrt(n)].
/// Binomials are exact; the comparison carries orders-of-magnitude margins.
Lemma8Check check_lemma8_bound(std::size_t n, double kappa);

double lemma8_beta(double kappa);

}  // namespace ranklab
