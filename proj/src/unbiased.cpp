#include "ranklab/unbiased.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ranklab {

std::vector<BitString> all_bitstrings(std::size_t n) {
    if (n > 24) throw DimensionError("all_bitstrings limited to n <= 24");
    std::vector<BitString> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
        BitString b(n);
        for (std::size_t i = 0; i < n; ++i)
            if ((v >> i) & 1u) b.set(i, true);
        out.push_back(std::move(b));
    }
    return out;
}

std::vector<Permutation> all_permutations(std::size_t n) {
    if (n > 8) throw DimensionError("all_permutations limited to n <= 8");
    std::vector<std::size_t> images(n);
    std::iota(images.begin(), images.end(), std::size_t{0});
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation::from_images(images));
    } while (std::next_permutation(images.begin(), images.end()));
    return out;
}

std::string BiasWitness::describe(const std::string& op_name) const {
    std::ostringstream os;
    os << op_name << " violates " << condition << " invariance:\n  inputs = (";
    for (std::size_t i = 0; i < inputs.size(); ++i) os << (i ? ", " : "") << inputs[i].to_string();
    os << ")\n  ";
    if (condition == "xor-shift") {
        os << "shift z = " << shift.to_string();
    } else {
        os << "sigma = (";
        for (std::size_t i = 0; i < perm.size(); ++i) os << (i ? " " : "") << perm[i] + 1;
        os << ")";
    }
    os << "\n  candidate x = " << candidate.to_string() << "\n  D(x | inputs) = " << lhs.get_str()
       << " but transformed density = " << rhs.get_str();
    return os.str();
}

namespace {

// Odometer over all arity-sized input tuples drawn from `space`.
class TupleIterator {
  public:
    TupleIterator(const std::vector<BitString>& space, std::size_t arity, std::size_t n)
        : space_(space), idx_(arity, 0) {
        current_.assign(arity, arity ? space[0] : BitString(n));
        if (arity == 0) current_.clear();
    }

    bool done() const { return done_; }
    std::span<const BitString> tuple() const { return current_; }

    void advance() {
        for (std::size_t slot = 0; slot < idx_.size(); ++slot) {
            if (++idx_[slot] < space_.size()) {
                current_[slot] = space_[idx_[slot]];
                return;
            }
            idx_[slot] = 0;
            current_[slot] = space_[0];
        }
        done_ = true;  // wrapped around (also immediately true for arity 0 after one visit)
    }

  private:
    const std::vector<BitString>& space_;
    std::vector<std::size_t> idx_;
    std::vector<BitString> current_;
    bool done_ = false;
};

std::vector<BitString> xor_tuple(std::span<const BitString> tuple, const BitString& z) {
    std::vector<BitString> out(tuple.begin(), tuple.end());
    for (auto& t : out) t ^= z;
    return out;
}

std::vector<BitString> perm_tuple(std::span<const BitString> tuple, const Permutation& sigma) {
    std::vector<BitString> out;
    out.reserve(tuple.size());
    for (const auto& t : tuple) out.push_back(sigma.apply(t));
    return out;
}

BiasWitness make_witness(std::string condition, std::span<const BitString> inputs,
                         BitString candidate, Rational lhs, Rational rhs) {
    BiasWitness w;
    w.condition = std::move(condition);
    w.inputs.assign(inputs.begin(), inputs.end());
    w.candidate = std::move(candidate);
    w.lhs = std::move(lhs);
    w.rhs = std::move(rhs);
    return w;
}

}  // namespace

UnbiasedCheckResult check_unbiased_exhaustive(const ops::VariationOperator& op, std::size_t n) {
    if (n > 5) throw ConfigError("exhaustive unbiasedness check limited to n <= 5");
    const auto space = all_bitstrings(n);
    const auto perms = all_permutations(n);
    UnbiasedCheckResult res;

    for (TupleIterator it(space, op.arity, n); !it.done(); it.advance()) {
        const auto tuple = it.tuple();
        if (!op.accepts(tuple)) continue;

        if (op.deterministic) {
            const BitString out = op.output(tuple);
            for (const auto& z : space) {
                ++res.comparisons;
                const BitString shifted_out = op.output(xor_tuple(tuple, z));
                if (shifted_out != (out ^ z)) {
                    auto w = make_witness("xor-shift", tuple, out, 1,
                                          op.density(out ^ z, xor_tuple(tuple, z)));
                    w.shift = z;
                    res.passed = false;
                    res.witness = std::move(w);
                    return res;
                }
            }
            for (const auto& sigma : perms) {
                ++res.comparisons;
                const BitString mapped_out = op.output(perm_tuple(tuple, sigma));
                if (mapped_out != sigma.apply(out)) {
                    auto w = make_witness("permutation", tuple, out, 1,
                                          op.density(sigma.apply(out), perm_tuple(tuple, sigma)));
                    w.perm = sigma.images();
                    res.passed = false;
                    res.witness = std::move(w);
                    return res;
                }
            }
            continue;
        }

        for (const auto& z : space) {
            const auto shifted = xor_tuple(tuple, z);
            for (const auto& cand : space) {
                ++res.comparisons;
                const Rational lhs = op.density(cand, tuple);
                const Rational rhs = op.density(cand ^ z, shifted);
                if (lhs != rhs) {
                    auto w = make_witness("xor-shift", tuple, cand, lhs, rhs);
                    w.shift = z;
                    res.passed = false;
                    res.witness = std::move(w);
                    return res;
                }
            }
        }
        for (const auto& sigma : perms) {
            const auto mapped = perm_tuple(tuple, sigma);
            for (const auto& cand : space) {
                ++res.comparisons;
                const Rational lhs = op.density(cand, tuple);
                const Rational rhs = op.density(sigma.apply(cand), mapped);
                if (lhs != rhs) {
                    auto w = make_witness("permutation", tuple, cand, lhs, rhs);
                    w.perm = sigma.images();
                    res.passed = false;
                    res.witness = std::move(w);
                    return res;
                }
            }
        }
    }
    return res;
}

UnbiasedCheckResult check_unbiased_sampled(const ops::VariationOperator& op, std::size_t n,
                                           std::size_t rounds, Rng& rng) {
    UnbiasedCheckResult res;
    for (std::size_t r = 0; r < rounds; ++r) {
        std::vector<BitString> tuple;
        for (std::size_t a = 0; a < op.arity; ++a) tuple.push_back(rng.bits(n));
        if (!op.accepts(tuple)) continue;
        const BitString cand = rng.bits(n);
        const Rational lhs = op.density(cand, tuple);

        const BitString z = rng.bits(n);
        ++res.comparisons;
        const Rational rhs_shift = op.density(cand ^ z, xor_tuple(tuple, z));
        if (lhs != rhs_shift) {
            auto w = make_witness("xor-shift", tuple, cand, lhs, rhs_shift);
            w.shift = z;
            res.passed = false;
            res.witness = std::move(w);
            return res;
        }

        const Permutation sigma = rng.permutation(n);
        ++res.comparisons;
        const Rational rhs_perm = op.density(sigma.apply(cand), perm_tuple(tuple, sigma));
        if (lhs != rhs_perm) {
            auto w = make_witness("permutation", tuple, cand, lhs, rhs_perm);
            w.perm = sigma.images();
            res.passed = false;
            res.witness = std::move(w);
            return res;
        }
    }
    return res;
}

UnbiasedCheckResult check_density_normalization(const ops::VariationOperator& op, std::size_t n) {
    if (n > 5) throw ConfigError("density normalization check limited to n <= 5");
    const auto space = all_bitstrings(n);
    UnbiasedCheckResult res;
    for (TupleIterator it(space, op.arity, n); !it.done(); it.advance()) {
        const auto tuple = it.tuple();
        if (!op.accepts(tuple)) continue;
        Rational total = 0;
        for (const auto& cand : space) total += op.density(cand, tuple);
        ++res.comparisons;
        if (total != 1) {
            res.passed = false;
            res.witness = make_witness("normalization", tuple, space[0], total, 1);
            return res;
        }
    }
    return res;
}

}  // namespace ranklab
