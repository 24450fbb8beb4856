#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ranklab/errors.hpp"
#include "ranklab/exact.hpp"
#include "ranklab/problem.hpp"

namespace ranklab {

enum class AccessMode { Value, Ranking };

using RankVector = std::vector<std::size_t>;

/// rho_C(c) := 1 + |{c' in C : f(c') < f(c)}|; equal values share a rank.
template <typename T>
RankVector ranking_of(std::span<const T> values) {
    std::vector<T> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    RankVector ranks(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const auto it = std::lower_bound(sorted.begin(), sorted.end(), values[i]);
        ranks[i] = 1 + static_cast<std::size_t>(it - sorted.begin());
    }
    return ranks;
}

template <typename T>
RankVector ranking_of(const std::vector<T>& values) {
    return ranking_of(std::span<const T>(values));
}

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

/// The single gatekeeper between an algorithm and its hidden instance. Counts
/// queries, latches the first optimum hit, and maintains the adaptively
/// constructed strictly monotone perturbation g:
///
///   first query        -> 0
///   new strict maximum -> previous max g + 2^n
///   new strict minimum -> previous min g - 2^n
///   tied value         -> the tied point's g
///   otherwise          -> midpoint of the nearest lower/higher neighbours' g
///
/// All g arithmetic is exact; g is strictly order-isomorphic to f over the
/// history, so revealing g-values reveals exactly the ranking and nothing more.
/// Algorithms never touch an Oracle directly: they go through RankingChannel
/// or ValueChannel, and a Ranking-mode oracle exposes no value channel at all.
class Oracle {
  public:
    Oracle(ProblemInstance instance, AccessMode mode, std::uint64_t budget = kDefaultBudget)
        : instance_(std::move(instance)), mode_(mode), budget_(budget) {}

    AccessMode mode() const { return mode_; }
    std::size_t dimension() const { return instance_.dimension(); }

    std::uint64_t queries_used() const { return points_.size(); }
    bool optimum_found() const { return first_hit_.has_value(); }
    std::optional<std::uint64_t> first_hit_query() const { return first_hit_; }

    const std::vector<BitString>& queried_points() const { return points_; }
    const std::vector<Rational>& g_values() const { return g_values_; }

    /// Full rank vector of the history, per Def-4 semantics. Recomputed on
    /// demand (it is information-equivalent to the g-values).
    RankVector rank_vector() const { return ranking_of<Int>(values_); }

    /// Issues the query: appends to the history, advances the counter,
    /// latches the optimum, and returns (f(x), g(f(x))) internally.
    struct Response {
        Int value;
        Rational g;
    };
    Response query(const BitString& x) {
        if (x.size() != instance_.dimension())
            throw DimensionError("query dimension differs from instance dimension");
        if (points_.size() >= budget_) throw BudgetError(budget_);
        Int f = instance_.value(x);
        Rational g = assign_g(f);
        points_.push_back(x);
        values_.push_back(f);
        g_values_.push_back(g);
        if (!first_hit_ && x == instance_.target()) first_hit_ = points_.size();
        return {std::move(f), std::move(g)};
    }

    // Instance-private access: for the harness and tests, never for the
    // algorithms (they only ever see a channel).
    const ProblemInstance& instance() const { return instance_; }
    const std::vector<Int>& true_values() const { return values_; }

  private:
    Rational assign_g(const Int& f) {
        auto it = g_by_value_.find(f);
        if (it != g_by_value_.end()) return it->second;
        Rational g;
        if (g_by_value_.empty()) {
            g = 0;
        } else if (f > g_by_value_.rbegin()->first) {
            g = g_by_value_.rbegin()->second + Rational(pow2(instance_.dimension()));
        } else if (f < g_by_value_.begin()->first) {
            g = g_by_value_.begin()->second - Rational(pow2(instance_.dimension()));
        } else {
            const auto hi = g_by_value_.upper_bound(f);
            const auto lo = std::prev(hi);
            g = (lo->second + hi->second) / 2;
        }
        g_by_value_.emplace(f, g);
        return g;
    }

    ProblemInstance instance_;
    AccessMode mode_;
    std::uint64_t budget_;
    std::vector<BitString> points_;
    std::vector<Int> values_;
    std::vector<Rational> g_values_;
    std::map<Int, Rational> g_by_value_;  // distinct f-values, ordered; g order-isomorphic
    std::optional<std::uint64_t> first_hit_;
};

/// Ranking-mode access: responses are g-values (equivalently, the updated
/// ranking). There is no way to reach true objective values through this type.
class RankingChannel {
  public:
    explicit RankingChannel(Oracle& oracle) : oracle_(&oracle) {
        if (oracle.mode() != AccessMode::Ranking)
            throw ConfigError("ranking channel requires a Ranking-mode oracle");
    }

    Rational query(const BitString& x) { return oracle_->query(x).g; }

    RankVector ranks() const { return oracle_->rank_vector(); }
    std::size_t dimension() const { return oracle_->dimension(); }
    bool optimum_found() const { return oracle_->optimum_found(); }
    std::uint64_t queries_used() const { return oracle_->queries_used(); }
    const std::vector<BitString>& queried_points() const { return oracle_->queried_points(); }

  private:
    Oracle* oracle_;
};

/// Value-mode access: responses are exact objective values.
class ValueChannel {
  public:
    explicit ValueChannel(Oracle& oracle) : oracle_(&oracle) {
        if (oracle.mode() != AccessMode::Value)
            throw ConfigError("value channel requires a Value-mode oracle");
    }

    Int query(const BitString& x) { return oracle_->query(x).value; }

    std::size_t dimension() const { return oracle_->dimension(); }
    bool optimum_found() const { return oracle_->optimum_found(); }
    std::uint64_t queries_used() const { return oracle_->queries_used(); }
    const std::vector<BitString>& queried_points() const { return oracle_->queried_points(); }

  private:
    Oracle* oracle_;
};

}  // namespace ranklab
