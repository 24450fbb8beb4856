#include "ranklab/consistency.hpp"

#include <numeric>

namespace ranklab {

std::vector<std::size_t> full_mask(std::size_t n) {
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), std::size_t{0});
    return m;
}

namespace {

DecodeResult fail(std::string why) { return DecodeResult{std::nullopt, std::move(why)}; }

}  // namespace

DecodeResult identify_g_half(const SampleBatch& batch, RankingChannel& channel, Rng& rng,
                             std::size_t kappa) {
    const std::size_t d = batch.block_size();
    if (batch.points.empty() || d == 0) throw ConfigError("identify_g_half needs samples and a mask");

    const Rational m = multiset_median(batch.g_values);
    std::vector<std::size_t> at_median;
    for (std::size_t j = 0; j < batch.g_values.size(); ++j)
        if (batch.g_values[j] == m) at_median.push_back(j);
    const std::size_t i = at_median[static_cast<std::size_t>(rng.below(at_median.size()))];

    // One extra query: the mask-complement of the median sample (the full
    // bitwise complement when the mask covers everything).
    BitString probe = batch.points[i];
    for (std::size_t p : batch.mask) probe.flip(p);
    const Rational g_probe = channel.query(probe);
    const Rational& g_i = batch.g_values[i];

    std::vector<Rational> distinct = batch.g_values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    Rational anchor;
    if (g_probe == g_i) {
        // Equal values force the sample's masked value to be exactly d/2.
        if (d % 2 != 0) return fail("probe tied with sample on an odd-size mask");
        anchor = m;
    } else {
        const Rational lo = std::min(g_i, g_probe);
        const Rational hi = std::max(g_i, g_probe);
        const auto first = std::lower_bound(distinct.begin(), distinct.end(), lo);
        const auto last = std::upper_bound(distinct.begin(), distinct.end(), hi);
        const std::size_t chain_len = static_cast<std::size_t>(last - first);
        if (chain_len == 0 || *first != lo || *(last - 1) != hi)
            return fail("probe g-value not attained by any sample");
        if (d % 2 == 1 && chain_len == 2) {
            // Adjacent probe pair around an odd midpoint: the larger of the
            // two is g(ceil(d/2)).
            anchor = hi;
        } else {
            // The probe pair is value-symmetric around d/2, so the chain of
            // consecutive sampled values between them has length of parity
            // opposite to d; a matching parity betrays a gap.
            if (chain_len % 2 == d % 2) return fail("sampled g-chain has wrong parity");
            // Upper median: ceil(d/2) sits one step above the lower median
            // when the chain length is even.
            anchor = *(first + static_cast<std::ptrdiff_t>(chain_len / 2));
        }
    }

    const auto anchor_it = std::lower_bound(distinct.begin(), distinct.end(), anchor);
    if (anchor_it == distinct.end() || *anchor_it != anchor)
        return fail("anchor g-value not attained by any sample");
    const std::ptrdiff_t anchor_pos = anchor_it - distinct.begin();
    const std::ptrdiff_t anchor_value = static_cast<std::ptrdiff_t>((d + 1) / 2);

    DecodedBatch out;
    out.anchor_g = anchor;
    out.decoded.assign(batch.points.size(), std::nullopt);
    for (std::size_t j = 0; j < batch.points.size(); ++j) {
        const auto it = std::lower_bound(distinct.begin(), distinct.end(), batch.g_values[j]);
        const std::ptrdiff_t steps = (it - distinct.begin()) - anchor_pos;
        // Window test |steps| <= kappa*sqrt(d), squared to stay in integers.
        if (static_cast<std::size_t>(steps * steps) > kappa * kappa * d) continue;
        const std::ptrdiff_t value = anchor_value + steps;
        if (value < 0 || value > static_cast<std::ptrdiff_t>(d))
            return fail("decoded value escapes [0, d]");
        out.decoded[j] = static_cast<std::size_t>(value);
        out.in_window.push_back(j);
    }
    return DecodeResult{std::move(out), {}};
}

FeasibleSet feasible_set(const DecodedBatch& decoded, const SampleBatch& batch,
                         const BitString& base, std::size_t enumeration_cap) {
    const std::size_t r = batch.block_size();
    if (r > enumeration_cap)
        throw ConfigError("feasible-set enumeration over " + std::to_string(r) +
                          " positions exceeds the cap of " + std::to_string(enumeration_cap));
    // Compress each constraint to the masked positions so the scan works on
    // single words.
    std::vector<std::uint64_t> words;
    std::vector<std::size_t> targets;
    for (std::size_t j : decoded.in_window) {
        std::uint64_t w = 0;
        for (std::size_t t = 0; t < r; ++t)
            if (batch.points[j].test(batch.mask[t])) w |= std::uint64_t{1} << t;
        words.push_back(w);
        targets.push_back(*decoded.decoded[j]);
    }

    constexpr std::size_t kMemberCap = std::size_t{1} << 22;
    const std::uint64_t full = (std::uint64_t{1} << r) - 1;
    FeasibleSet out;
    for (std::uint64_t p = 0; p <= full; ++p) {
        bool ok = true;
        for (std::size_t c = 0; c < words.size(); ++c) {
            const auto agree =
                static_cast<std::size_t>(__builtin_popcountll(~(p ^ words[c]) & full));
            if (agree != targets[c]) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        if (out.members.size() >= kMemberCap) {
            out.overflowed = true;
            break;
        }
        BitString cand = base;
        for (std::size_t t = 0; t < r; ++t) cand.set(batch.mask[t], (p >> t) & 1u);
        out.members.push_back(std::move(cand));
    }
    return out;
}

BitString uniform_from_feasible(const FeasibleSet& f, std::size_t n, Rng& rng) {
    if (f.members.empty()) return rng.bits(n);
    return f.members[static_cast<std::size_t>(rng.below(f.members.size()))];
}

}  // namespace ranklab
