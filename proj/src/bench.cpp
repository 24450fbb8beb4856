#include "ranklab/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace ranklab {

namespace {

bool needs_k(AlgorithmId id) {
    return id == AlgorithmId::OneMaxBlockwise || id == AlgorithmId::OneMaxSmallK;
}

struct Cell {
    std::size_t n;
    std::size_t k;
};

std::vector<Cell> cells_of(const ExperimentConfig& c) {
    std::vector<Cell> cells;
    if (needs_k(c.algorithm)) {
        for (std::size_t n : c.ns)
            for (std::size_t k : c.ks) cells.push_back({n, k});
    } else {
        for (std::size_t n : c.ns) cells.push_back({n, 0});
    }
    return cells;
}

}  // namespace

void validate(const ExperimentConfig& c) {
    if (c.trials == 0) throw ConfigError("trials must be at least 1");
    if (c.ns.empty()) throw ConfigError("at least one dimension n is required");
    if (needs_k(c.algorithm) && c.ks.empty())
        throw ConfigError(std::string(to_string(c.algorithm)) + " requires k");
    RunOptions opt;
    opt.budget = c.budget;
    opt.restart_cap = c.restart_cap;
    for (const Cell& cell : cells_of(c))
        validate_combination(c.algorithm, c.instance, cell.n, cell.k, opt);
}

double theoretical_bound(AlgorithmId id, std::size_t n, std::size_t k) {
    const double nd = static_cast<double>(n);
    switch (id) {
        case AlgorithmId::Rls: return nd * std::log(nd);
        case AlgorithmId::MonotoneLinear: return 4.0 * nd - 5.0;
        case AlgorithmId::OneMaxNary: return nd / std::log(nd);
        case AlgorithmId::OneMaxBlockwise:
        case AlgorithmId::OneMaxSmallK: return nd / std::log(static_cast<double>(k));
        case AlgorithmId::BvLogN: {
            std::size_t lg = 0;
            while ((std::size_t{1} << lg) < n) ++lg;
            return static_cast<double>(lg + 2);
        }
    }
    return 0;
}

namespace {

TrialRow run_trial(const ExperimentConfig& c, const Cell& cell, std::size_t trial,
                   std::uint64_t global_index) {
    TrialRow row;
    row.trial = trial;
    row.seed = derive_seed(c.base_seed, global_index);
    row.algorithm = c.algorithm;
    row.n = cell.n;
    row.k = cell.k;

    Rng rng(row.seed);
    BitString z = rng.bits(cell.n);
    ProblemInstance inst = [&] {
        switch (c.instance) {
            case ProblemKind::OneMax: return ProblemInstance::one_max(std::move(z));
            case ProblemKind::BinaryValue: return ProblemInstance::binary_value(std::move(z));
            case ProblemKind::BinaryValueStar:
                return ProblemInstance::binary_value_star(std::move(z),
                                                          rng.permutation(cell.n));
        }
        throw ConfigError("unknown instance kind");
    }();

    Oracle oracle(std::move(inst), required_mode(c.algorithm), c.budget);
    RunOptions opt;
    opt.budget = c.budget;
    opt.restart_cap = c.restart_cap;
    try {
        const Transcript tr = run_algorithm(c.algorithm, oracle, cell.k, rng, opt);
        row.queries = tr.total_queries;
        row.success = tr.success;
        row.restarts = tr.restarts;
    } catch (const BudgetError&) {
        row.queries = oracle.queries_used();
        row.error = "budget";
    } catch (const RestartCapError&) {
        row.queries = oracle.queries_used();
        row.error = "restart-cap";
    }
    return row;
}

}  // namespace

std::vector<CellAggregate> aggregate_rows(const ExperimentConfig& config,
                                          const std::vector<TrialRow>& rows) {
    std::vector<CellAggregate> out;
    for (const Cell& cell : cells_of(config)) {
        std::vector<double> queries;
        std::size_t successes = 0;
        for (const TrialRow& r : rows) {
            if (r.n != cell.n || r.k != cell.k) continue;
            queries.push_back(static_cast<double>(r.queries));
            if (r.success) ++successes;
        }
        if (queries.empty()) continue;
        CellAggregate a;
        a.n = cell.n;
        a.k = cell.k;
        a.trials = queries.size();
        std::sort(queries.begin(), queries.end());
        a.min = queries.front();
        a.max = queries.back();
        a.median = queries.size() % 2 == 1
                       ? queries[queries.size() / 2]
                       : (queries[queries.size() / 2 - 1] + queries[queries.size() / 2]) / 2.0;
        double sum = 0;
        for (double q : queries) sum += q;
        a.mean = sum / static_cast<double>(queries.size());
        double var = 0;
        for (double q : queries) var += (q - a.mean) * (q - a.mean);
        a.stddev = queries.size() > 1
                       ? std::sqrt(var / static_cast<double>(queries.size() - 1))
                       : 0.0;
        a.success_rate = static_cast<double>(successes) / static_cast<double>(queries.size());
        a.bound = theoretical_bound(config.algorithm, cell.n, cell.k);
        a.bound_ratio = a.bound > 0 ? a.mean / a.bound : 0.0;
        out.push_back(a);
    }
    return out;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    validate(config);
    const auto cells = cells_of(config);
    const std::size_t total = cells.size() * config.trials;

    ExperimentReport report;
    report.config = config;
    report.rows.resize(total);

    std::size_t workers = config.workers;
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, total);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
            const Cell& cell = cells[idx / config.trials];
            const std::size_t trial = idx % config.trials;
            report.rows[idx] = run_trial(config, cell, trial, idx);
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    report.cells = aggregate_rows(config, report.rows);
    return report;
}

std::string to_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << "trial,seed,algorithm,n,k,queries,success,restarts\n";
    for (const TrialRow& r : report.rows) {
        os << r.trial << ',' << r.seed << ',' << to_string(r.algorithm) << ',' << r.n << ','
           << r.k << ',' << r.queries << ',' << (r.success ? "true" : "false") << ','
           << r.restarts << '\n';
    }
    return os.str();
}

std::string to_json(const ExperimentReport& report) {
    nlohmann::ordered_json j;
    j["config"] = {
        {"algorithm", to_string(report.config.algorithm)},
        {"instance", to_string(report.config.instance)},
        {"n", report.config.ns},
        {"k", report.config.ks},
        {"trials", report.config.trials},
        {"seed", report.config.base_seed},
        {"budget", report.config.budget},
        {"restart_cap", report.config.restart_cap},
    };
    j["cells"] = nlohmann::ordered_json::array();
    for (const CellAggregate& a : report.cells) {
        nlohmann::ordered_json c;
        c["n"] = a.n;
        if (a.k) c["k"] = a.k;
        c["trials"] = a.trials;
        c["queries"] = {{"mean", a.mean}, {"stddev", a.stddev}, {"min", a.min},
                        {"max", a.max},  {"median", a.median}};
        c["success_rate"] = a.success_rate;
        c["bound"] = a.bound;
        c["bound_ratio"] = a.bound_ratio;
        j["cells"].push_back(std::move(c));
    }
    return j.dump(2) + "\n";
}

std::string to_plot_data(const ExperimentReport& report) {
    std::ostringstream os;
    os << "n,mean_queries,bound\n";
    for (const CellAggregate& a : report.cells)
        os << a.n << ',' << a.mean << ',' << a.bound << '\n';
    return os.str();
}

std::vector<TrialRow> parse_csv(const std::string& csv) {
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);  // header
    std::vector<TrialRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        TrialRow r;
        std::getline(ls, field, ',');
        r.trial = std::stoull(field);
        std::getline(ls, field, ',');
        r.seed = std::stoull(field);
        std::getline(ls, field, ',');
        r.algorithm = algorithm_from_string(field).value();
        std::getline(ls, field, ',');
        r.n = std::stoull(field);
        std::getline(ls, field, ',');
        r.k = std::stoull(field);
        std::getline(ls, field, ',');
        r.queries = std::stoull(field);
        std::getline(ls, field, ',');
        r.success = field == "true";
        std::getline(ls, field, ',');
        r.restarts = std::stoull(field);
        rows.push_back(std::move(r));
    }
    return rows;
}

}  // namespace ranklab
