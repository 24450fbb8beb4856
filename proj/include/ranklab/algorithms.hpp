#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "ranklab/consistency.hpp"
#include "ranklab/oracle.hpp"

namespace ranklab {

enum class AlgorithmId {
    Rls,
    MonotoneLinear,
    OneMaxNary,
    OneMaxBlockwise,
    OneMaxSmallK,
    BvLogN,
};

const char* to_string(AlgorithmId id);
std::optional<AlgorithmId> algorithm_from_string(std::string_view name);

struct RunOptions {
    std::uint64_t budget = kDefaultBudget;
    std::size_t restart_cap = 50;
    std::size_t kappa = 2;
    double alpha = 9.0;
    std::size_t enumeration_cap = kEnumerationCap;
    /// Test hook: observes the (x, y) pair after every accepted update of the
    /// pair-maintaining algorithms.
    std::function<void(const BitString&, const BitString&)> pair_observer;
};

/// Per-run query log and bookkeeping. total_queries counts until the oracle
/// latched the optimum (or the run gave up); queries holds the actual points.
struct Transcript {
    AlgorithmId algorithm{};
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<BitString> queries;
    std::uint64_t total_queries = 0;
    bool success = false;
    std::size_t restarts = 0;
    std::size_t max_arity_used = 0;
    /// Per-attempt (n-ary) or per-block-run (blockwise, small-k) query counts.
    std::vector<std::uint64_t> attempt_queries;
    std::uint64_t phase1_queries = 0;  // small-k only
};

/// s = ceil(alpha * d / ln d); the sample count for a block of size d.
std::size_t sample_count(std::size_t d, double alpha = 9.0);

/// Hill-climbing by single uniform bit flips, accepting ties.
Transcript run_rls(RankingChannel& channel, Rng& rng, const RunOptions& opt = {});

/// Pair-maintaining optimizer for generalized strictly monotone objectives;
/// expected cost at most 4n - 5 queries.
Transcript run_monotone_linear(RankingChannel& channel, Rng& rng, const RunOptions& opt = {});

/// Sample-decode-reconstruct OneMax solver, one shot of ceil(alpha*n/ln n)+2
/// queries per attempt, restarting on any decode failure.
Transcript run_onemax_nary(RankingChannel& channel, Rng& rng, const RunOptions& opt = {});

/// Blockwise variant: optimizes blocks of k positions sequentially, each via
/// the sample-decode-reconstruct phase restricted to the block.
Transcript run_onemax_blockwise(RankingChannel& channel, std::size_t k, Rng& rng,
                                const RunOptions& opt = {});

/// Small-k variant: solves a reference block exactly first, deliberately
/// mis-sets it, and uses joint flips to verify every later block, making the
/// final answer certain.
Transcript run_onemax_smallk(RankingChannel& channel, std::size_t k, Rng& rng,
                             const RunOptions& opt = {});

/// Value-mode BinaryValue solver: one uniform query, ceil(log2 n) halving
/// queries, then the unique consistent target. Always exactly
/// ceil(log2 n) + 2 queries, success certain.
Transcript run_bv_logn(ValueChannel& channel, Rng& rng, const RunOptions& opt = {});

AccessMode required_mode(AlgorithmId id);
bool instance_supported(AlgorithmId id, ProblemKind kind);

/// Largest operator arity the algorithm may use at this configuration.
std::size_t arity_bound(AlgorithmId id, std::size_t n, std::size_t k, double alpha = 9.0);

/// Validates the (algorithm, instance kind, n, k) combination; throws
/// ConfigError with a reason otherwise.
void validate_combination(AlgorithmId id, ProblemKind kind, std::size_t n, std::size_t k,
                          const RunOptions& opt = {});

/// Dispatch by id; constructs the channel matching the oracle's mode. Routes
/// small-k with k <= 3 to the monotone-linear optimizer.
Transcript run_algorithm(AlgorithmId id, Oracle& oracle, std::size_t k, Rng& rng,
                         const RunOptions& opt = {});

}  // namespace ranklab
