#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ranklab/algorithms.hpp"

namespace ranklab {

struct ExperimentConfig {
    AlgorithmId algorithm = AlgorithmId::Rls;
    ProblemKind instance = ProblemKind::OneMax;
    std::vector<std::size_t> ns;  // one entry for a plain run, several for a sweep
    std::vector<std::size_t> ks;  // empty when the algorithm takes no k
    std::size_t trials = 100;
    std::uint64_t base_seed = 1;
    std::uint64_t budget = kDefaultBudget;
    std::size_t restart_cap = 50;
    std::size_t workers = 0;  // 0 = hardware concurrency
};

struct TrialRow {
    std::size_t trial = 0;  // index within its (n, k) cell
    std::uint64_t seed = 0;
    AlgorithmId algorithm{};
    std::size_t n = 0;
    std::size_t k = 0;
    std::uint64_t queries = 0;
    bool success = false;
    std::size_t restarts = 0;
    std::string error;  // budget / restart-cap errors; empty otherwise
};

struct CellAggregate {
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t trials = 0;
    double mean = 0, stddev = 0, min = 0, max = 0, median = 0;
    double success_rate = 0;
    double bound = 0;        // applicable theoretical formula
    double bound_ratio = 0;  // mean / bound
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<TrialRow> rows;        // ordered by (cell, trial)
    std::vector<CellAggregate> cells;  // one per (n, k)
};

/// Rejects invalid (algorithm, instance, n, k) combinations before any run.
void validate(const ExperimentConfig& config);

/// Runs all trials (concurrently up to `workers`); deterministic in
/// base_seed regardless of the worker count. Per-trial errors are recorded
/// in their rows, not thrown.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// The comparison formula the aggregates are normalized by.
double theoretical_bound(AlgorithmId id, std::size_t n, std::size_t k);

/// Canonical row format: header `trial,seed,algorithm,n,k,queries,success,restarts`.
std::string to_csv(const ExperimentReport& report);

/// Derived summary: config echo plus per-cell aggregates.
std::string to_json(const ExperimentReport& report);

/// Plot-ready (n, mean_queries, bound) triples, one line per cell.
std::string to_plot_data(const ExperimentReport& report);

/// Recomputes aggregates from rows (used to cross-check emitted summaries).
std::vector<CellAggregate> aggregate_rows(const ExperimentConfig& config,
                                          const std::vector<TrialRow>& rows);

/// Parses the canonical CSV back into rows.
std::vector<TrialRow> parse_csv(const std::string& csv);

}  // namespace ranklab
