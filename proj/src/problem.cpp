#include "ranklab/problem.hpp"

namespace ranklab {

const char* to_string(ProblemKind k) {
    switch (k) {
        case ProblemKind::OneMax: return "onemax";
        case ProblemKind::BinaryValue: return "binaryvalue";
        case ProblemKind::BinaryValueStar: return "binaryvalue-star";
    }
    return "?";
}

std::size_t om_value(const BitString& z, const BitString& x) {
    return agreement(z, x);
}

Int bv_value(const BitString& z, const Permutation& sigma, const BitString& x) {
    z.require_same_size(x);
    if (sigma.size() != z.size()) throw DimensionError("permutation dimension differs");
    Int v = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const std::size_t p = sigma(i);
        if (x.test(p) == z.test(p)) mpz_setbit(v.get_mpz_t(), i);
    }
    return v;
}

}  // namespace ranklab
