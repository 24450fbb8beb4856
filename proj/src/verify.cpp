#include "ranklab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ranklab/ops.hpp"
#include "ranklab/problem.hpp"

namespace ranklab {

std::vector<std::size_t> ell_values(std::span<const BitString> strings) {
    if (strings.size() < 2) throw DimensionError("need at least two strings");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < strings.size(); ++i) {
        for (std::size_t j = i + 1; j < strings.size(); ++j) {
            const auto diff = differing_positions(strings[i], strings[j]);
            if (diff.empty()) throw DimensionError("strings must be pairwise distinct");
            out.push_back(diff.back() + 1);  // 1-based position
        }
    }
    return out;
}

std::size_t distinct_ell_count(std::span<const BitString> strings) {
    const auto ells = ell_values(strings);
    std::set<std::size_t> distinct(ells.begin(), ells.end());
    return distinct.size();
}

namespace {

// BV_{z'}(x) packed into a word: agreement mask of x and z', read as an
// n-bit integer. Comparing these words compares the objective values.
std::uint64_t bv_word(std::uint64_t x, std::uint64_t zc, std::uint64_t full) {
    return ~(x ^ zc) & full;
}

}  // namespace

std::vector<std::uint64_t> consistent_targets_bv_prefixes(std::span<const BitString> queries,
                                                          const BitString& target) {
    const std::size_t n = target.size();
    if (n > 24) throw ConfigError("consistent-target counting limited to n <= 24");
    if (queries.empty()) return {};

    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    std::vector<std::uint64_t> qwords;
    qwords.reserve(queries.size());
    for (const auto& q : queries) {
        q.require_same_size(target);
        qwords.push_back(q.low_word());
    }
    const std::uint64_t zword = target.low_word();

    // A candidate consistent at prefix t is consistent at every shorter
    // prefix, so survivors only need checking against the newest point.
    std::vector<std::uint64_t> survivors;
    survivors.reserve(full + 1);
    for (std::uint64_t zc = 0; zc <= full; ++zc) survivors.push_back(zc);

    std::vector<std::uint64_t> counts;
    std::vector<std::uint64_t> true_vals;
    for (std::size_t t = 0; t < qwords.size(); ++t) {
        true_vals.push_back(bv_word(qwords[t], zword, full));
        if (t > 0) {
            std::vector<std::uint64_t> next;
            next.reserve(survivors.size());
            for (std::uint64_t zc : survivors) {
                const std::uint64_t vt = bv_word(qwords[t], zc, full);
                bool ok = true;
                for (std::size_t i = 0; i < t && ok; ++i) {
                    const std::uint64_t vi = bv_word(qwords[i], zc, full);
                    const auto cand_cmp = vt < vi ? -1 : (vt > vi ? 1 : 0);
                    const auto true_cmp = true_vals[t] < true_vals[i]
                                              ? -1
                                              : (true_vals[t] > true_vals[i] ? 1 : 0);
                    ok = cand_cmp == true_cmp;
                }
                if (ok) next.push_back(zc);
            }
            survivors = std::move(next);
        }
        counts.push_back(survivors.size());
    }
    return counts;
}

std::uint64_t consistent_targets_bv(std::span<const BitString> queries, const BitString& target) {
    const auto counts = consistent_targets_bv_prefixes(queries, target);
    return counts.empty() ? 0 : counts.back();
}

double lemma8_beta(double kappa) {
    return std::exp(-4.0 * kappa * kappa) / (2.0 * std::sqrt(M_PI));
}

Lemma8Check check_lemma8_bound(std::size_t n, double kappa) {
    const double half = static_cast<double>(n) / 2.0;
    const double rad = kappa * std::sqrt(static_cast<double>(n));
    const auto lo = static_cast<std::size_t>(std::max(0.0, std::ceil(half - rad)));
    const auto hi = std::min(n, static_cast<std::size_t>(std::floor(half + rad)));
    const double beta = lemma8_beta(kappa);

    // rhs = beta * 2^n / sqrt(n), computed with enough float precision that
    // the (orders-of-magnitude) margin dominates any rounding.
    mpf_set_default_prec(256);
    mpf_class rhs(beta);
    mpf_mul_2exp(rhs.get_mpf_t(), rhs.get_mpf_t(), static_cast<unsigned long>(n));
    rhs /= sqrt(mpf_class(static_cast<unsigned long>(n)));

    for (std::size_t ell = lo; ell <= hi; ++ell) {
        const mpf_class lhs(ops::binomial(n, ell));
        if (lhs < rhs) return {false, ell};
    }
    return {true, 0};
}

}  // namespace ranklab
