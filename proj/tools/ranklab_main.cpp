// ranklab CLI: runs query-complexity experiments and the combinatorial
// verifiers. Exit codes: 0 ok, 1 verification failed, 2 bad configuration,
// 3 runtime error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "ranklab/bench.hpp"
#include "ranklab/unbiased.hpp"
#include "ranklab/verify.hpp"

namespace {

using namespace ranklab;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

ProblemKind parse_instance(const std::string& name) {
    if (name == "onemax") return ProblemKind::OneMax;
    if (name == "binaryvalue") return ProblemKind::BinaryValue;
    if (name == "binaryvalue-star") return ProblemKind::BinaryValueStar;
    throw ConfigError("unknown instance kind: " + name);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

int emit_report(const ExperimentReport& report, const std::string& out,
                const std::string& format, bool sweep) {
    if (out.empty()) {
        std::cout << to_csv(report);
        return kExitOk;
    }
    if (format == "csv" || format == "both") write_file(out + ".csv", to_csv(report));
    if (format == "json" || format == "both") write_file(out + ".json", to_json(report));
    if (sweep) write_file(out + ".plot.csv", to_plot_data(report));
    for (const CellAggregate& a : report.cells) {
        std::cout << "n=" << a.n;
        if (a.k) std::cout << " k=" << a.k;
        std::cout << " trials=" << a.trials << " mean=" << a.mean
                  << " success=" << a.success_rate << " bound_ratio=" << a.bound_ratio << "\n";
    }
    return kExitOk;
}

int cmd_experiment(const ExperimentConfig& config, const std::string& out,
                   const std::string& format, bool sweep) {
    const ExperimentReport report = run_experiment(config);
    return emit_report(report, out, format, sweep);
}

int cmd_verify_unbiased(std::size_t n) {
    bool all_ok = true;
    for (const auto& op : ops::catalogue(n)) {
        const auto norm = check_density_normalization(op, n);
        const auto res = check_unbiased_exhaustive(op, n);
        const bool ok = norm.passed && res.passed;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << op.name << "  (" << res.comparisons
                  << " comparisons)\n";
        if (!res.passed) std::cout << res.witness->describe(op.name) << "\n";
        if (!norm.passed) std::cout << "  density does not sum to 1\n";
        all_ok = all_ok && ok;
    }
    const auto control = ops::biased_control();
    const auto res = check_unbiased_exhaustive(control, n);
    std::cout << (res.passed ? "FAIL" : "PASS") << "  " << control.name
              << "  (expected to be biased)\n";
    if (!res.passed) std::cout << res.witness->describe(control.name) << "\n";
    all_ok = all_ok && !res.passed;
    return all_ok ? kExitOk : kExitVerifyFailed;
}

int cmd_verify_lemma20(std::size_t n, std::size_t t, std::size_t trials, std::uint64_t seed) {
    Rng rng(seed);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t tt = 2 + static_cast<std::size_t>(rng.below(t - 1));
        std::set<BitString, std::less<>> unique;
        std::vector<BitString> strings;
        while (strings.size() < tt) {
            BitString b = rng.bits(n);
            const std::string key = b.to_string();
            bool fresh = true;
            for (const auto& s : strings) fresh = fresh && !(s == b);
            if (fresh) strings.push_back(std::move(b));
        }
        const std::size_t distinct = distinct_ell_count(strings);
        if (distinct > strings.size() - 1) {
            std::cout << "FAIL  " << distinct << " distinct l-values from " << strings.size()
                      << " strings:\n";
            for (const auto& s : strings) std::cout << "  " << s.to_string() << "\n";
            return kExitVerifyFailed;
        }
    }
    std::cout << "PASS  " << trials << " random trials (n=" << n << ", t<=" << t
              << "): distinct l-values never exceed t-1\n";
    return kExitOk;
}

int cmd_verify_statement_a(std::size_t n, AlgorithmId algorithm, std::size_t trials,
                           std::uint64_t seed) {
    for (std::size_t trial = 0; trial < trials; ++trial) {
        Rng rng(derive_seed(seed, trial));
        ProblemInstance inst = ProblemInstance::binary_value(rng.bits(n));
        const BitString target = inst.target();
        Oracle oracle(std::move(inst), AccessMode::Ranking);
        Transcript tr = run_algorithm(algorithm, oracle, 0, rng, {});
        const auto counts = consistent_targets_bv_prefixes(tr.queries, target);
        for (std::size_t t = 1; t <= counts.size(); ++t) {
            // 2^{n-t+1}, zero once t exceeds n+1.
            const double bound = t <= n + 1 ? std::ldexp(1.0, static_cast<int>(n + 1 - t)) : 0.0;
            if (static_cast<double>(counts[t - 1]) < bound) {
                std::cout << "FAIL  trial " << trial << " prefix " << t << ": "
                          << counts[t - 1] << " consistent targets < 2^(n-t+1)=" << bound << "\n";
                return kExitVerifyFailed;
            }
        }
    }
    std::cout << "PASS  " << trials << " " << to_string(algorithm) << " transcripts (n=" << n
              << "): consistent-target counts respect 2^(n-t+1)\n";
    return kExitOk;
}

int cmd_verify_lemma8(std::size_t n_min, std::size_t n_max, double kappa) {
    for (std::size_t n = n_min; n <= n_max; ++n) {
        const Lemma8Check res = check_lemma8_bound(n, kappa);
        if (!res.ok) {
            std::cout << "FAIL  n=" << n << " l=" << res.violating_ell
                      << ": C(n,l) 2^-n < beta n^-1/2\n";
            return kExitVerifyFailed;
        }
    }
    std::cout << "PASS  binomial lower bound holds for all n in [" << n_min << ", " << n_max
              << "], kappa=" << kappa << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ranklab: ranking-based black-box query-complexity laboratory"};
    app.require_subcommand(1);

    std::string algorithm = "rls";
    std::string instance = "onemax";
    std::vector<std::size_t> ns;
    std::vector<std::size_t> ks;
    ExperimentConfig config;
    std::string out;
    std::string format = "both";

    auto add_experiment_flags = [&](CLI::App* cmd, bool multi_n) {
        cmd->add_option("--algorithm", algorithm, "rls | monotone_linear | onemax_nary | "
                                                  "onemax_blockwise | onemax_smallk | bv_logn")
            ->required();
        cmd->add_option("--instance", instance, "onemax | binaryvalue | binaryvalue-star");
        auto* n_opt = cmd->add_option("--n", ns, "dimension(s)")->required()->delimiter(',');
        if (!multi_n) n_opt->expected(1);
        cmd->add_option("--k", ks, "block size(s)")->delimiter(',');
        cmd->add_option("--trials", config.trials, "trials per (n, k) cell");
        cmd->add_option("--seed", config.base_seed, "base seed");
        cmd->add_option("--budget", config.budget, "per-run query budget");
        cmd->add_option("--restart-cap", config.restart_cap, "per-run restart cap");
        cmd->add_option("--workers", config.workers, "worker threads (0 = auto)");
        cmd->add_option("--out", out, "output path prefix (writes <out>.csv / .json)");
        cmd->add_option("--format", format, "csv | json | both")
            ->check(CLI::IsMember({"csv", "json", "both"}));
    };

    CLI::App* run = app.add_subcommand("run", "run one experiment");
    add_experiment_flags(run, false);
    CLI::App* sweep = app.add_subcommand("sweep", "sweep over dimensions");
    add_experiment_flags(sweep, true);

    CLI::App* verify = app.add_subcommand("verify", "run a verifier");
    verify->require_subcommand(1);

    std::size_t v_n = 3, v_t = 8, v_trials = 10000, v_nmin = 64, v_nmax = 256;
    std::uint64_t v_seed = 1;
    double v_kappa = 2.0;
    std::string v_algorithm = "rls";

    CLI::App* vu = verify->add_subcommand("unbiased", "Def-3 invariance of the operator catalogue");
    vu->add_option("--n", v_n, "dimension (exhaustive, <= 5)");

    CLI::App* vl20 = verify->add_subcommand("lemma20", "distinct l-value bound");
    vl20->add_option("--n", v_n, "dimension")->required();
    vl20->add_option("--t", v_t, "max strings per trial");
    vl20->add_option("--trials", v_trials, "random trials");
    vl20->add_option("--seed", v_seed, "seed");

    CLI::App* vsa = verify->add_subcommand("statement-a", "consistent-target lower bound");
    vsa->add_option("--n", v_n, "dimension (<= 24)")->required();
    vsa->add_option("--algorithm", v_algorithm, "transcript source: rls | monotone_linear");
    vsa->add_option("--trials", v_trials, "transcripts");
    vsa->add_option("--seed", v_seed, "seed");

    CLI::App* vl8 = verify->add_subcommand("lemma8", "binomial probability lower bound");
    vl8->add_option("--n-min", v_nmin, "smallest n");
    vl8->add_option("--n-max", v_nmax, "largest n");
    vl8->add_option("--kappa", v_kappa, "window constant");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed() || sweep->parsed()) {
            const auto id = algorithm_from_string(algorithm);
            if (!id) throw ConfigError("unknown algorithm: " + algorithm);
            config.algorithm = *id;
            config.instance = parse_instance(instance);
            config.ns = ns;
            config.ks = ks;
            return cmd_experiment(config, out, format, sweep->parsed());
        }
        if (vu->parsed()) return cmd_verify_unbiased(v_n);
        if (vl20->parsed()) return cmd_verify_lemma20(v_n, v_t, v_trials, v_seed);
        if (vsa->parsed()) {
            const auto id = algorithm_from_string(v_algorithm);
            if (!id || (*id != AlgorithmId::Rls && *id != AlgorithmId::MonotoneLinear))
                throw ConfigError("statement-a transcripts come from rls or monotone_linear");
            return cmd_verify_statement_a(v_n, *id, v_trials, v_seed);
        }
        if (vl8->parsed()) return cmd_verify_lemma8(v_nmin, v_nmax, v_kappa);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DimensionError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
