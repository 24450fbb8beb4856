#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "ranklab/problem.hpp"
#include "ranklab/rng.hpp"
#include "ranklab/unbiased.hpp"

using namespace ranklab;

TEST_CASE("bitstring basics") {
    BitString b = BitString::from_string("10110");
    CHECK(b.size() == 5);
    CHECK(b.count() == 3);
    CHECK(b.test(0));
    CHECK(!b.test(1));
    CHECK(b.to_string() == "10110");
    CHECK(b.complemented().to_string() == "01001");
    CHECK(b.complemented().complemented() == b);

    BitString z = BitString::zeros(70);
    CHECK(z.count() == 0);
    CHECK(BitString::ones(70).count() == 70);
    CHECK((b ^ b) == BitString::zeros(5));

    CHECK_THROWS_AS(b ^ BitString::zeros(4), DimensionError);
    CHECK_THROWS_AS(BitString::from_string("10a"), DimensionError);
}

TEST_CASE("hamming and agreement") {
    const BitString x = BitString::from_string("10110");
    const BitString y = BitString::from_string("00111");
    CHECK(hamming(x, y) == 2);  // positions 1 and 5
    CHECK(agreement(x, y) == 3);
    CHECK(differing_positions(x, y) == std::vector<std::size_t>{0, 4});
    CHECK(agreeing_positions(x, y) == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("om_value") {
    const BitString z = BitString::from_string("10110");
    CHECK(om_value(z, z) == 5);
    CHECK(om_value(z, z.complemented()) == 0);
    CHECK(om_value(z, BitString::from_string("00111")) == 3);
    CHECK_THROWS_AS(om_value(z, BitString::zeros(4)), DimensionError);
}

TEST_CASE("om_value symmetry and hamming identity") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(80);
        const BitString z = rng.bits(n);
        const BitString x = rng.bits(n);
        CHECK(om_value(z, x) + om_value(z, x.complemented()) == n);
        CHECK(om_value(z, x) == n - hamming(z, x));
    }
}

TEST_CASE("bv_value") {
    const BitString z3 = BitString::from_string("111");
    const Permutation id3 = Permutation::identity(3);
    CHECK(bv_value(z3, id3, z3) == 7);  // 2^3 - 1
    CHECK(bv_value(z3, id3, BitString::from_string("011")) == 6);

    // sigma = (1->2, 2->3, 3->1): delta(x_2,z_2)*1 + delta(x_3,z_3)*2 + delta(x_1,z_1)*4
    const Permutation sigma = Permutation::from_images({1, 2, 0});
    CHECK(bv_value(z3, sigma, BitString::from_string("110")) == 5);

    CHECK_THROWS_AS(bv_value(z3, id3, BitString::zeros(4)), DimensionError);
}

TEST_CASE("bv_value is injective for fixed (z, sigma), exhaustively to n=10") {
    Rng rng(99);
    for (std::size_t n = 1; n <= 10; ++n) {
        const BitString z = rng.bits(n);
        const Permutation sigma = rng.permutation(n);
        std::set<Int> seen;
        for (const BitString& x : all_bitstrings(n)) {
            const Int v = bv_value(z, sigma, x);
            CHECK(v >= 0);
            CHECK(v <= pow2(n) - 1);
            CHECK(seen.insert(v).second);  // never seen before
        }
        // the maximum is attained exactly at z
        CHECK(bv_value(z, sigma, z) == pow2(n) - 1);
    }
}

TEST_CASE("permutation validation and application") {
    CHECK_THROWS_AS(Permutation::from_images({0, 0, 1}), DimensionError);
    CHECK_THROWS_AS(Permutation::from_images({0, 3}), DimensionError);

    const Permutation sigma = Permutation::from_images({2, 0, 1});
    const BitString x = BitString::from_string("100");
    CHECK(sigma.apply(x).to_string() == "010");  // bit i of result = x[sigma(i)]
    CHECK(sigma.inverse().apply(sigma.apply(x)) == x);
}

TEST_CASE("problem instances expose the right optimum") {
    Rng rng(3);
    const BitString z = rng.bits(12);
    const auto om = ProblemInstance::one_max(z);
    const auto bv = ProblemInstance::binary_value(z);
    const auto star = ProblemInstance::binary_value_star(z, rng.permutation(12));
    for (const auto* inst : {&om, &bv, &star}) {
        CHECK(inst->value(z) == inst->max_value());
        const BitString other = z ^ BitString::from_string("100000000001");
        CHECK(inst->value(other) < inst->max_value());
    }
}
