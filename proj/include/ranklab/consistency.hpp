#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ranklab/oracle.hpp"
#include "ranklab/ops.hpp"

namespace ranklab {

/// A batch of ranking-mode samples plus the set of relevant positions. In
/// blockwise mode all points agree pairwise outside the mask; a full-cube
/// batch masks every position.
struct SampleBatch {
    std::vector<BitString> points;
    std::vector<Rational> g_values;
    std::vector<std::size_t> mask;  // relevant positions, ascending

    std::size_t block_size() const { return mask.size(); }
};

std::vector<std::size_t> full_mask(std::size_t n);

/// Smallest element whose <=-count reaches half the multiset size.
template <typename T>
T multiset_median(std::vector<T> values) {
    std::sort(values.begin(), values.end());
    // values[i] has exactly i+1 elements <= it when scanning sorted order, so
    // the rule picks the first index with 2(i+1) >= size.
    const std::size_t idx = (values.size() - 1) / 2;
    return values[idx];
}

/// Decoded mask-relative objective values for the in-window samples. The
/// anchor g corresponds to the value ceil(d/2) on the d masked positions.
struct DecodedBatch {
    Rational anchor_g;
    std::vector<std::optional<std::size_t>> decoded;  // per sample; set only inside the window
    std::vector<std::size_t> in_window;               // indices into the batch
};

struct DecodeResult {
    std::optional<DecodedBatch> batch;
    std::string failure;  // set iff !batch; a decode failure triggers a restart upstream

    explicit operator bool() const { return batch.has_value(); }
};

/// Identifies g(ceil(d/2) [+ hidden offset]) with one extra query: probes the
/// mask-complement of a sample attaining the multiset median of the g-values,
/// then takes the upper median of the distinct sampled g-values between the
/// probe pair, and rank-walks the sorted distinct g-values to decode every
/// sample within kappa*sqrt(d) steps of the anchor. Any detectable gap in the
/// sampled value chain (probe value unsampled, wrong chain parity, decoded
/// value escaping [0, d]) is reported as a decode failure instead of a guess.
DecodeResult identify_g_half(const SampleBatch& batch, RankingChannel& channel, Rng& rng,
                             std::size_t kappa = 2);

/// Exhaustively enumerated set of candidate targets consistent with the
/// decoded values: candidates agree with `base` outside the mask and satisfy
/// agreement-on-mask(candidate, points[i]) = decoded[i] for every in-window i.
struct FeasibleSet {
    std::vector<BitString> members;
    bool overflowed = false;  // member cap hit; treat like an inconsistent decode
};

inline constexpr std::size_t kEnumerationCap = 24;

FeasibleSet feasible_set(const DecodedBatch& decoded, const SampleBatch& batch,
                         const BitString& base, std::size_t enumeration_cap = kEnumerationCap);

/// Uniform over F; uniform over the whole cube when F is empty.
BitString uniform_from_feasible(const FeasibleSet& f, std::size_t n, Rng& rng);

}  // namespace ranklab
