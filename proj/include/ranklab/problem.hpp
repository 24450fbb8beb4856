#pragma once

#include <cstddef>

#include "ranklab/bitstring.hpp"
#include "ranklab/exact.hpp"

namespace ranklab {

enum class ProblemKind { OneMax, BinaryValue, BinaryValueStar };

const char* to_string(ProblemKind k);

/// OM_z(x) = |{i in [n] : x_i = z_i}|.
std::size_t om_value(const BitString& z, const BitString& x);

/// BV_{z,sigma}(x) = sum_{i=1..n} 2^{i-1} [x_{sigma(i)} = z_{sigma(i)}].
/// Injective in x for fixed (z, sigma); equals 2^n - 1 iff x = z.
Int bv_value(const BitString& z, const Permutation& sigma, const BitString& x);

/// A hidden objective together with its known unique optimum. The optimum is
/// the target string z for all three kinds.
class ProblemInstance {
  public:
    static ProblemInstance one_max(BitString z) {
        return ProblemInstance(ProblemKind::OneMax, std::move(z), Permutation{});
    }
    static ProblemInstance binary_value(BitString z) {
        Permutation id = Permutation::identity(z.size());
        return ProblemInstance(ProblemKind::BinaryValue, std::move(z), std::move(id));
    }
    static ProblemInstance binary_value_star(BitString z, Permutation sigma) {
        if (sigma.size() != z.size())
            throw DimensionError("target and permutation dimensions differ");
        return ProblemInstance(ProblemKind::BinaryValueStar, std::move(z), std::move(sigma));
    }

    ProblemKind kind() const { return kind_; }
    std::size_t dimension() const { return target_.size(); }
    const BitString& target() const { return target_; }
    const Permutation& perm() const { return perm_; }

    Int value(const BitString& x) const {
        if (kind_ == ProblemKind::OneMax) return Int(static_cast<unsigned long>(om_value(target_, x)));
        return bv_value(target_, perm_, x);
    }

    /// Maximum attainable value: n for OneMax, 2^n - 1 otherwise.
    Int max_value() const {
        if (kind_ == ProblemKind::OneMax) return Int(static_cast<unsigned long>(dimension()));
        return pow2(dimension()) - 1;
    }

  private:
    ProblemInstance(ProblemKind k, BitString z, Permutation p)
        : kind_(k), target_(std::move(z)), perm_(std::move(p)) {}

    ProblemKind kind_;
    BitString target_;
    Permutation perm_;  // identity unless BinaryValueStar
};

}  // namespace ranklab
