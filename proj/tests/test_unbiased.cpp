#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ranklab/unbiased.hpp"

using namespace ranklab;

TEST_CASE("enumeration helpers") {
    CHECK(all_bitstrings(3).size() == 8);
    CHECK(all_permutations(3).size() == 6);
}

TEST_CASE("catalogue passes the exhaustive Def-3 checks at n=2 and n=3") {
    for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
        for (const auto& op : ops::catalogue(n)) {
            const auto res = check_unbiased_exhaustive(op, n);
            INFO(op.name, " at n=", n);
            CHECK(res.passed);
            const auto norm = check_density_normalization(op, n);
            CHECK(norm.passed);
        }
    }
}

TEST_CASE("deterministic fast path agrees with the generic density path") {
    // Run a deterministic operator through the generic (density-comparison)
    // path and check the verdict matches the point-mass path.
    for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
        for (auto op : ops::catalogue(n)) {
            if (!op.deterministic) continue;
            const auto fast = check_unbiased_exhaustive(op, n);
            auto generic = op;
            generic.deterministic = false;
            generic.output = nullptr;
            const auto slow = check_unbiased_exhaustive(generic, n);
            CHECK(fast.passed == slow.passed);
        }
    }
}

TEST_CASE("planted biased operator fails with a counterexample") {
    const auto control = ops::biased_control();
    const auto res = check_unbiased_exhaustive(control, 3);
    REQUIRE(!res.passed);
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->condition == "xor-shift");
    CHECK(res.witness->lhs != res.witness->rhs);
    CHECK(!res.witness->describe(control.name).empty());
}

TEST_CASE("sampled spot-checks pass at a larger dimension") {
    Rng rng(7);
    for (const auto& op : ops::catalogue(10)) {
        if (op.name.rfind("uniform_from_feasible", 0) == 0) continue;  // 2^n enumeration
        const auto res = check_unbiased_sampled(op, 10, 300, rng);
        INFO(op.name);
        CHECK(res.passed);
    }
}
