#include "ranklab/algorithms.hpp"

#include <cmath>

namespace ranklab {

const char* to_string(AlgorithmId id) {
    switch (id) {
        case AlgorithmId::Rls: return "rls";
        case AlgorithmId::MonotoneLinear: return "monotone_linear";
        case AlgorithmId::OneMaxNary: return "onemax_nary";
        case AlgorithmId::OneMaxBlockwise: return "onemax_blockwise";
        case AlgorithmId::OneMaxSmallK: return "onemax_smallk";
        case AlgorithmId::BvLogN: return "bv_logn";
    }
    return "?";
}

std::optional<AlgorithmId> algorithm_from_string(std::string_view name) {
    for (auto id : {AlgorithmId::Rls, AlgorithmId::MonotoneLinear, AlgorithmId::OneMaxNary,
                    AlgorithmId::OneMaxBlockwise, AlgorithmId::OneMaxSmallK, AlgorithmId::BvLogN})
        if (name == to_string(id)) return id;
    return std::nullopt;
}

std::size_t sample_count(std::size_t d, double alpha) {
    if (d < 2) throw ConfigError("sample count undefined for block size < 2");
    return static_cast<std::size_t>(
        std::ceil(alpha * static_cast<double>(d) / std::log(static_cast<double>(d))));
}

namespace {

std::size_t ceil_log2(std::size_t n) {
    std::size_t t = 0;
    while ((std::size_t{1} << t) < n) ++t;
    return t;
}

void note_arity(Transcript& t, std::size_t arity) {
    if (arity > t.max_arity_used) t.max_arity_used = arity;
}

template <typename Channel>
void finalize(Transcript& t, const Channel& ch) {
    t.queries = ch.queried_points();
    t.total_queries = ch.queries_used();
    t.success = ch.optimum_found();
}

}  // namespace

Transcript run_rls(RankingChannel& ch, Rng& rng, const RunOptions&) {
    Transcript t;
    t.algorithm = AlgorithmId::Rls;
    t.n = ch.dimension();

    BitString x = ops::uniform_sample(t.n, rng);
    Rational gx = ch.query(x);
    note_arity(t, 1);
    while (!ch.optimum_found()) {
        const BitString y = ops::flip_uniform_bit(x, rng);
        const Rational gy = ch.query(y);
        if (gy >= gx) {
            x = y;
            gx = gy;
        }
    }
    finalize(t, ch);
    return t;
}

Transcript run_monotone_linear(RankingChannel& ch, Rng& rng, const RunOptions& opt) {
    Transcript t;
    t.algorithm = AlgorithmId::MonotoneLinear;
    t.n = ch.dimension();

    BitString x = ops::uniform_sample(t.n, rng);
    Rational gx = ch.query(x);
    BitString y = ops::complement(x);
    Rational gy = ch.optimum_found() ? gx : ch.query(y);
    note_arity(t, 2);

    while (!ch.optimum_found()) {
        const BitString w = ops::flip_one_where_different(x, y, rng);
        const Rational gw = ch.query(w);
        if (ch.optimum_found()) break;
        if (gw > gx) {
            const BitString w2 = ops::dist1(x, w);
            const Rational gw2 = ch.query(w2);
            if (ch.optimum_found()) break;
            if (gw2 == gx) {
                x = w;  // x and w differ in one bit
                gx = gw;
            } else if (gw > gy) {
                y = w;  // y and w differ in one bit
                gy = gw;
            }
        } else if (gw > gy) {
            const BitString w2 = ops::dist1(y, w);
            const Rational gw2 = ch.query(w2);
            if (ch.optimum_found()) break;
            if (gw2 == gy) {
                y = w;
                gy = gw;
            }
        }
        if (opt.pair_observer) opt.pair_observer(x, y);
    }
    finalize(t, ch);
    return t;
}

Transcript run_onemax_nary(RankingChannel& ch, Rng& rng, const RunOptions& opt) {
    const std::size_t n = ch.dimension();
    if (n < 2) throw ConfigError("onemax_nary requires n >= 2");
    if (n > opt.enumeration_cap)
        throw ConfigError("onemax_nary requires n <= enumeration cap (" +
                          std::to_string(opt.enumeration_cap) + ")");
    const std::size_t s = sample_count(n, opt.alpha);

    Transcript t;
    t.algorithm = AlgorithmId::OneMaxNary;
    t.n = n;

    for (std::size_t attempt = 0;; ++attempt) {
        if (attempt > opt.restart_cap) throw RestartCapError(opt.restart_cap);
        const std::uint64_t start = ch.queries_used();

        SampleBatch batch;
        batch.mask = full_mask(n);
        for (std::size_t i = 0; i < s && !ch.optimum_found(); ++i) {
            BitString xi = ops::uniform_sample(n, rng);
            Rational g = ch.query(xi);
            batch.points.push_back(std::move(xi));
            batch.g_values.push_back(std::move(g));
        }

        if (!ch.optimum_found()) {
            const DecodeResult dec = identify_g_half(batch, ch, rng, opt.kappa);
            note_arity(t, 1);  // the complement probe
            if (!ch.optimum_found()) {
                // A failed decode leaves an empty feasible set; the sampling
                // operator then falls back to uniform, so every attempt that
                // runs to completion costs exactly s + 2 queries.
                FeasibleSet f;
                if (dec) {
                    f = feasible_set(*dec.batch, batch, BitString::zeros(n), opt.enumeration_cap);
                    if (f.overflowed) f.members.clear();
                    note_arity(t, dec.batch->in_window.size());
                }
                ch.query(uniform_from_feasible(f, n, rng));
            }
        }

        t.attempt_queries.push_back(ch.queries_used() - start);
        if (ch.optimum_found()) break;
        ++t.restarts;
    }
    finalize(t, ch);
    return t;
}

namespace {

enum class Step { Finished, Advance, Retry };

}  // namespace

Transcript run_onemax_blockwise(RankingChannel& ch, std::size_t k, Rng& rng,
                                const RunOptions& opt) {
    const std::size_t n = ch.dimension();
    if (k < 4 || k > n) throw ConfigError("onemax_blockwise requires 4 <= k <= n");
    if (k > opt.enumeration_cap)
        throw ConfigError("onemax_blockwise requires k <= enumeration cap");

    Transcript t;
    t.algorithm = AlgorithmId::OneMaxBlockwise;
    t.n = n;
    t.k = k;

    auto count_restart = [&] {
        if (++t.restarts > opt.restart_cap) throw RestartCapError(opt.restart_cap);
    };

    while (true) {  // run-level attempts; a silently wrong block forces a rerun
        BitString x = ops::uniform_sample(n, rng);
        Rational gx = ch.query(x);
        if (ch.optimum_found()) break;
        BitString y = ops::complement(x);
        ch.query(y);
        note_arity(t, 2);
        if (ch.optimum_found()) break;

        while (!ch.optimum_found()) {
            const std::size_t remaining = hamming(x, y);
            if (remaining == 0) break;
            const std::size_t kp = std::min(k, remaining);

            if (kp == 1) {
                // Last unoptimized position: the better of the distance-1
                // pair is exact under strict monotonicity.
                const BitString x1 = ops::flip_k_where_different(x, y, k, rng);
                const Rational g1 = ch.query(x1);
                if (ch.optimum_found()) break;
                if (g1 > gx) {
                    x = x1;
                    gx = g1;
                }
                y = x;
                continue;
            }

            const std::size_t s = sample_count(kp, opt.alpha);
            const std::uint64_t block_start = ch.queries_used();
            const Step step = [&]() -> Step {
                BitString x1 = ops::flip_k_where_different(x, y, k, rng);
                Rational g1 = ch.query(x1);
                if (ch.optimum_found()) return Step::Finished;

                SampleBatch batch;
                batch.mask = differing_positions(x, x1);
                batch.points.push_back(std::move(x1));
                batch.g_values.push_back(std::move(g1));
                for (std::size_t i = 1; i < s; ++i) {
                    BitString xi = ops::sample_block_uniform(x, batch.points[0], rng);
                    Rational g = ch.query(xi);
                    if (ch.optimum_found()) return Step::Finished;
                    batch.points.push_back(std::move(xi));
                    batch.g_values.push_back(std::move(g));
                }

                const DecodeResult dec = identify_g_half(batch, ch, rng, opt.kappa);
                note_arity(t, 3);  // block-complement probe
                if (ch.optimum_found()) return Step::Finished;
                if (!dec) return Step::Retry;

                const FeasibleSet f = feasible_set(*dec.batch, batch, x, opt.enumeration_cap);
                if (f.members.empty() || f.overflowed) return Step::Retry;
                note_arity(t, dec.batch->in_window.size() + 2);

                const BitString zj = uniform_from_feasible(f, n, rng);
                const Rational gz = ch.query(zj);
                if (ch.optimum_found()) return Step::Finished;

                const BitString ynew = ops::update4(y, x, batch.points[0], zj);
                note_arity(t, 4);
                ch.query(ynew);
                y = ynew;
                x = zj;
                gx = gz;
                if (opt.pair_observer) opt.pair_observer(x, y);
                return ch.optimum_found() ? Step::Finished : Step::Advance;
            }();
            t.attempt_queries.push_back(ch.queries_used() - block_start);
            if (step == Step::Finished) break;
            if (step == Step::Retry) count_restart();
        }

        if (ch.optimum_found()) break;
        count_restart();
    }
    finalize(t, ch);
    return t;
}

Transcript run_onemax_smallk(RankingChannel& ch, std::size_t k, Rng& rng, const RunOptions& opt) {
    const std::size_t n = ch.dimension();
    if (k < 4) throw ConfigError("onemax_smallk requires k >= 4");
    if (2 * k > n) throw ConfigError("onemax_smallk requires k <= n/2");
    if (k > opt.enumeration_cap) throw ConfigError("onemax_smallk requires k <= enumeration cap");

    Transcript t;
    t.algorithm = AlgorithmId::OneMaxSmallK;
    t.n = n;
    t.k = k;

    auto count_restart = [&] {
        if (++t.restarts > opt.restart_cap) throw RestartCapError(opt.restart_cap);
    };

    // Phase 1: solve a reference block of k positions exactly, in k+2 queries.
    BitString xp = ops::uniform_sample(n, rng);
    Rational gxp = ch.query(xp);
    BitString yp = ops::complement(xp);
    if (!ch.optimum_found()) ch.query(yp);
    note_arity(t, 2);
    for (std::size_t step = 0; step < k && !ch.optimum_found(); ++step) {
        const BitString w = ops::flip_k_where_different(xp, yp, 1, rng);
        const Rational gw = ch.query(w);
        if (ch.optimum_found()) break;
        if (gw > gxp) {
            xp = w;
            gxp = gw;
        } else {
            yp = ops::update2(yp, xp, w);
            note_arity(t, 3);
        }
    }
    t.phase1_queries = ch.queries_used();

    if (!ch.optimum_found()) {
        const std::vector<std::size_t> ref = agreeing_positions(xp, yp);

        // Phase 2: start deliberately wrong on the reference block.
        BitString x = ops::initialize1(xp, yp);
        Rational gx = ch.query(x);
        if (!ch.optimum_found()) {
            BitString y = ops::initialize2(xp, yp);
            ch.query(y);

            while (!ch.optimum_found()) {
                const std::size_t remaining = hamming(x, y);
                if (remaining == 0) break;
                const std::size_t kp = std::min(k, remaining);

                if (kp == 1) {
                    const BitString x1 = ops::flip_k_where_different(x, y, k, rng);
                    const Rational g1 = ch.query(x1);
                    if (ch.optimum_found()) break;
                    if (g1 > gx) {
                        x = x1;
                        gx = g1;
                    }
                    y = x;
                    continue;
                }

                const std::size_t s = sample_count(kp, opt.alpha);
                const std::uint64_t block_start = ch.queries_used();
                const Step step = [&]() -> Step {
                    BitString x1 = ops::flip_k_where_different(x, y, k, rng);
                    Rational g1 = ch.query(x1);
                    if (ch.optimum_found()) return Step::Finished;

                    SampleBatch batch;
                    batch.mask = differing_positions(x, x1);
                    batch.points.push_back(std::move(x1));
                    batch.g_values.push_back(std::move(g1));
                    for (std::size_t i = 1; i < s; ++i) {
                        BitString xi = ops::sample_block_uniform(x, batch.points[0], rng);
                        Rational g = ch.query(xi);
                        if (ch.optimum_found()) return Step::Finished;
                        batch.points.push_back(std::move(xi));
                        batch.g_values.push_back(std::move(g));
                    }

                    const DecodeResult dec = identify_g_half(batch, ch, rng, opt.kappa);
                    note_arity(t, 3);
                    if (ch.optimum_found()) return Step::Finished;
                    if (!dec) return Step::Retry;

                    const FeasibleSet f = feasible_set(*dec.batch, batch, x, opt.enumeration_cap);
                    if (f.members.empty() || f.overflowed) return Step::Retry;
                    note_arity(t, dec.batch->in_window.size() + 2);

                    const BitString zj = uniform_from_feasible(f, n, rng);
                    const Rational gz = ch.query(zj);
                    if (ch.optimum_found()) return Step::Finished;

                    // Probe: flip the current block plus an equal number of
                    // reference positions; the probe's value matches the
                    // candidate's iff every block bit is correct. For a full
                    // block this flips the whole reference block.
                    BitString probe = zj;
                    for (std::size_t p : batch.mask) probe.flip(p);
                    for (std::size_t p : rng.subset(ref, kp)) probe.flip(p);
                    note_arity(t, 5);
                    const Rational gprobe = ch.query(probe);
                    if (ch.optimum_found()) return Step::Finished;
                    if (gprobe != gz) return Step::Retry;  // some block bit is wrong

                    const BitString ynew = ops::update4(y, x, batch.points[0], zj);
                    note_arity(t, 4);
                    ch.query(ynew);
                    y = ynew;
                    x = zj;
                    gx = gz;
                    if (opt.pair_observer) opt.pair_observer(x, y);
                    return ch.optimum_found() ? Step::Finished : Step::Advance;
                }();
                t.attempt_queries.push_back(ch.queries_used() - block_start);
                if (step == Step::Finished) break;
                if (step == Step::Retry) count_restart();
            }

            if (!ch.optimum_found()) {
                // All non-reference positions are verified; restoring the
                // reference block yields the target with certainty.
                note_arity(t, 3);
                ch.query(ops::finish(x, xp, yp));
                if (!ch.optimum_found())
                    throw InternalError("small-k finish query missed the target");
            }
        }
    }
    finalize(t, ch);
    return t;
}

Transcript run_bv_logn(ValueChannel& ch, Rng& rng, const RunOptions&) {
    const std::size_t n = ch.dimension();
    const std::size_t levels = ceil_log2(n);  // number of halving queries

    Transcript t;
    t.algorithm = AlgorithmId::BvLogN;
    t.n = n;

    std::vector<BitString> hist;
    std::vector<Int> vals;
    hist.push_back(ops::uniform_sample(n, rng));
    vals.push_back(ch.query(hist.back()));
    for (std::size_t q = 0; q < levels; ++q) {
        note_arity(t, hist.size());
        hist.push_back(ops::flip_half(hist, rng));
        vals.push_back(ch.query(hist.back()));
    }

    // Branch pattern of each position across consecutive query pairs, and of
    // each weight index across the corresponding value bits. The injectivity
    // of the objective makes value bit i the agreement indicator of position
    // sigma(i), so equal patterns identify sigma.
    std::vector<std::uint64_t> pos_pattern(n, 0);
    for (std::size_t q = 0; q + 1 < hist.size(); ++q)
        for (std::size_t p : differing_positions(hist[q], hist[q + 1]))
            pos_pattern[p] |= std::uint64_t{1} << q;

    std::vector<std::vector<std::size_t>> cells(std::size_t{1} << levels);
    for (std::size_t p = 0; p < n; ++p) cells[pos_pattern[p]].push_back(p);
    for (const auto& cell : cells)
        if (cell.size() > 1)
            throw InternalError("partition cell not singleton after all halving queries");

    std::vector<std::size_t> sigma_images(n);
    BitString target(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t value_pattern = 0;
        for (std::size_t q = 0; q + 1 < vals.size(); ++q) {
            const bool a = mpz_tstbit(vals[q].get_mpz_t(), i) != 0;
            const bool b = mpz_tstbit(vals[q + 1].get_mpz_t(), i) != 0;
            if (a != b) value_pattern |= std::uint64_t{1} << q;
        }
        if (cells[value_pattern].empty())
            throw InternalError("value branch pattern matches no position");
        const std::size_t p = cells[value_pattern][0];
        sigma_images[i] = p;
        const bool agreed = mpz_tstbit(vals[0].get_mpz_t(), i) != 0;
        target.set(p, agreed ? hist[0].test(p) : !hist[0].test(p));
    }

    // The consistent set must be exactly {target}: re-derive every response.
    const Permutation sigma = Permutation::from_images(std::move(sigma_images));
    for (std::size_t q = 0; q < hist.size(); ++q)
        if (bv_value(target, sigma, hist[q]) != vals[q])
            throw InternalError("reconstructed target inconsistent with responses");

    note_arity(t, hist.size());
    ch.query(target);
    if (!ch.optimum_found()) throw InternalError("reconstructed target is not the optimum");
    finalize(t, ch);
    return t;
}

AccessMode required_mode(AlgorithmId id) {
    return id == AlgorithmId::BvLogN ? AccessMode::Value : AccessMode::Ranking;
}

bool instance_supported(AlgorithmId id, ProblemKind kind) {
    switch (id) {
        case AlgorithmId::Rls:
            return kind == ProblemKind::OneMax || kind == ProblemKind::BinaryValue;
        case AlgorithmId::MonotoneLinear:
            return true;  // all three kinds are strictly monotone w.r.t. their target
        case AlgorithmId::OneMaxNary:
        case AlgorithmId::OneMaxBlockwise:
        case AlgorithmId::OneMaxSmallK:
            return kind == ProblemKind::OneMax;
        case AlgorithmId::BvLogN:
            return kind == ProblemKind::BinaryValue || kind == ProblemKind::BinaryValueStar;
    }
    return false;
}

std::size_t arity_bound(AlgorithmId id, std::size_t n, std::size_t k, double alpha) {
    switch (id) {
        case AlgorithmId::Rls: return 1;
        case AlgorithmId::MonotoneLinear: return 2;
        case AlgorithmId::OneMaxNary: return sample_count(n, alpha);
        case AlgorithmId::OneMaxBlockwise:
        case AlgorithmId::OneMaxSmallK:
            // The feasible-set operator takes the in-window samples plus the
            // two block markers; its arity exceeds k at small scales.
            return (k >= 4 ? sample_count(k, alpha) : 0) + 2;
        case AlgorithmId::BvLogN: {
            std::size_t lg = 0;
            while ((std::size_t{1} << lg) < n) ++lg;
            return lg + 1;
        }
    }
    return 0;
}

void validate_combination(AlgorithmId id, ProblemKind kind, std::size_t n, std::size_t k,
                          const RunOptions& opt) {
    if (n == 0) throw ConfigError("dimension must be positive");
    if (!instance_supported(id, kind))
        throw ConfigError(std::string(to_string(id)) + " does not support instance kind " +
                          to_string(kind));
    switch (id) {
        case AlgorithmId::OneMaxNary:
            if (n < 2 || n > opt.enumeration_cap)
                throw ConfigError("onemax_nary requires 2 <= n <= enumeration cap");
            break;
        case AlgorithmId::OneMaxBlockwise:
            if (k < 4 || k > n || k > opt.enumeration_cap)
                throw ConfigError("onemax_blockwise requires 4 <= k <= min(n, enumeration cap)");
            break;
        case AlgorithmId::OneMaxSmallK:
            if (k <= 3) break;  // routed to the monotone-linear optimizer
            if (2 * k > n || k > opt.enumeration_cap)
                throw ConfigError("onemax_smallk requires k <= n/2 and k <= enumeration cap");
            break;
        default: break;
    }
}

Transcript run_algorithm(AlgorithmId id, Oracle& oracle, std::size_t k, Rng& rng,
                         const RunOptions& opt) {
    validate_combination(id, oracle.instance().kind(), oracle.dimension(), k, opt);
    if (id == AlgorithmId::BvLogN) {
        ValueChannel ch(oracle);
        return run_bv_logn(ch, rng, opt);
    }
    RankingChannel ch(oracle);
    switch (id) {
        case AlgorithmId::Rls: return run_rls(ch, rng, opt);
        case AlgorithmId::MonotoneLinear: return run_monotone_linear(ch, rng, opt);
        case AlgorithmId::OneMaxNary: return run_onemax_nary(ch, rng, opt);
        case AlgorithmId::OneMaxBlockwise: return run_onemax_blockwise(ch, k, rng, opt);
        case AlgorithmId::OneMaxSmallK:
            if (k <= 3) {
                // Constant arity is a special case of the pairwise optimizer.
                Transcript t = run_monotone_linear(ch, rng, opt);
                t.k = k;
                return t;
            }
            return run_onemax_smallk(ch, k, rng, opt);
        default: break;
    }
    throw ConfigError("unknown algorithm");
}

}  // namespace ranklab
