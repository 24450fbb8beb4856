#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "ranklab/ops.hpp"
#include "ranklab/unbiased.hpp"

using namespace ranklab;

namespace {

BitString bs(const char* s) { return BitString::from_string(s); }

Rational frac(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

}  // namespace

TEST_CASE("uniform density") {
    CHECK(ops::density_uniform(bs("00")) == frac(1, 4));
    CHECK(ops::density_uniform(bs("11")) == frac(1, 4));
    Rng rng(1);
    double ones = 0;
    const int trials = 20000;
    for (int i = 0; i < trials; ++i) ones += ops::uniform_sample(10, rng).count();
    CHECK(ones / trials == doctest::Approx(5.0).epsilon(0.02));  // binomial mean n/2
}

TEST_CASE("complement") {
    CHECK(ops::complement(bs("0000")) == bs("1111"));
    CHECK(ops::complement(ops::complement(bs("0110"))) == bs("0110"));
}

TEST_CASE("flip_one_where_different") {
    Rng rng(5);
    // x=00, y=11: enumerate the four equiprobable branches -> {10, 01} each 1/2
    CHECK(ops::density_flip_one_where_different(bs("10"), bs("00"), bs("11")) == frac(1, 2));
    CHECK(ops::density_flip_one_where_different(bs("01"), bs("00"), bs("11")) == frac(1, 2));
    CHECK(ops::density_flip_one_where_different(bs("00"), bs("00"), bs("11")) == 0);
    // n=1
    CHECK(ops::density_flip_one_where_different(bs("1"), bs("0"), bs("1")) == frac(1, 2));
    CHECK(ops::density_flip_one_where_different(bs("0"), bs("0"), bs("1")) == frac(1, 2));
    // the output is always at hamming distance 1 from x or from y
    for (int i = 0; i < 200; ++i) {
        const BitString x = rng.bits(8), y = rng.bits(8);
        if (x == y) continue;
        const BitString w = ops::flip_one_where_different(x, y, rng);
        CHECK((hamming(w, x) == 1 || hamming(w, y) == 1));
    }
    CHECK_THROWS_AS(ops::flip_one_where_different(bs("01"), bs("01"), rng), DimensionError);
}

TEST_CASE("dist1") {
    CHECK(ops::dist1(bs("000"), bs("001")) == bs("000"));
    CHECK(ops::dist1(bs("000"), bs("011")) == bs("011"));
    CHECK(ops::dist1(bs("010"), bs("010")) == bs("010"));
}

TEST_CASE("flip_k_where_different") {
    Rng rng(11);
    CHECK(ops::flip_k_where_different(bs("0000"), bs("1111"), 4, rng) == bs("1111"));
    // k=2 over four differing positions: each weight-2 string density 1/6
    int weight2 = 0;
    for (const BitString& c : all_bitstrings(4)) {
        const Rational d = ops::density_flip_k_where_different(c, bs("0000"), bs("1111"), 2);
        if (c.count() == 2) {
            CHECK(d == frac(1, 6));
            ++weight2;
        } else {
            CHECK(d == 0);
        }
    }
    CHECK(weight2 == 6);
    // k' = min(k, |difference|): forced single flip
    CHECK(ops::flip_k_where_different(bs("00"), bs("01"), 5, rng) == bs("01"));
    CHECK_THROWS_AS(ops::flip_k_where_different(bs("0"), bs("0"), 1, rng), DimensionError);
}

TEST_CASE("sample_block_uniform") {
    Rng rng(13);
    CHECK(ops::sample_block_uniform(bs("0110"), bs("0110"), rng) == bs("0110"));  // point mass
    CHECK(ops::density_sample_block_uniform(bs("00"), bs("00"), bs("01")) == frac(1, 2));
    CHECK(ops::density_sample_block_uniform(bs("01"), bs("00"), bs("01")) == frac(1, 2));
    CHECK(ops::density_sample_block_uniform(bs("10"), bs("00"), bs("01")) == 0);
    // density of any valid output is 2^-hamming(x, anchor)
    const BitString x = rng.bits(10), anchor = rng.bits(10);
    const BitString out = ops::sample_block_uniform(x, anchor, rng);
    CHECK(ops::density_sample_block_uniform(out, x, anchor) ==
          ops::rat(1, pow2(hamming(x, anchor))));
}

TEST_CASE("block_complement") {
    CHECK(ops::block_complement(bs("1010"), bs("1100"), bs("1100")) == bs("1010"));  // b = c
    CHECK(ops::block_complement(bs("1010"), bs("0000"), bs("1111")) == bs("0101"));  // full
    CHECK(ops::block_complement(bs("1010"), bs("1100"), bs("1111")) == bs("1001"));
}

TEST_CASE("update4") {
    CHECK(ops::update4(bs("0101"), bs("0011"), bs("0011"), bs("1111")) == bs("0101"));  // x = x1
    CHECK(ops::update4(bs("0101"), bs("0011"), bs("1100"), bs("1111")) == bs("1111"));  // full
    CHECK(ops::update4(bs("0000"), bs("0011"), bs("0000"), bs("1111")) == bs("0011"));
}

TEST_CASE("update2") {
    CHECK(ops::update2(bs("01"), bs("10"), bs("10")) == bs("01"));  // xp = w
    CHECK(ops::update2(bs("00"), bs("01"), bs("00")) == bs("01"));
    CHECK(ops::update2(bs("01"), bs("10"), bs("01")) == bs("10"));  // xp = complement(w)
}

TEST_CASE("initialize1 and initialize2") {
    CHECK(ops::initialize1(bs("10"), bs("10")) == bs("01"));  // xp = yp -> complement
    CHECK(ops::initialize2(bs("10"), bs("10")) == bs("01"));
    CHECK(ops::initialize1(bs("10"), bs("01")) == bs("10"));  // disjoint -> xp / yp
    CHECK(ops::initialize2(bs("10"), bs("01")) == bs("01"));
    CHECK(ops::initialize1(bs("10"), bs("11")) == bs("00"));  // O = {1}
    CHECK(ops::initialize2(bs("10"), bs("11")) == bs("01"));
}

TEST_CASE("test5") {
    // O empty and x = x1 -> unchanged
    CHECK(ops::test5(bs("0101"), bs("0101"), bs("1010"), bs("0011"), bs("0011")) == bs("0101"));
    // O = [n] -> complement
    CHECK(ops::test5(bs("0101"), bs("0110"), bs("0110"), bs("0011"), bs("0011")) == bs("1010"));
    // O(xp,yp) = {1}, x != x1 at {3}: flip positions 1 and 3
    CHECK(ops::test5(bs("0000"), bs("1000"), bs("1111"), bs("0010"), bs("0000")) == bs("1010"));
}

TEST_CASE("finish flips exactly the agreement block") {
    // O(xp, yp) = {2, 4}
    const BitString xp = bs("0101"), yp = bs("1100");
    CHECK(agreeing_positions(xp, yp) == std::vector<std::size_t>{1, 3});
    CHECK(ops::finish(bs("1111"), xp, yp) == bs("1010"));
    CHECK(ops::finish(bs("0000"), bs("01"), bs("10")) == bs("00"));  // O empty
}

TEST_CASE("partition cells and flip_half") {
    Rng rng(17);

    // Single history string: one cell, flip exactly floor(n/2) positions.
    const std::vector<BitString> h1 = {bs("0000")};
    auto cells = ops::partition_cells(h1);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].size() == 4);
    std::map<std::string, int> seen;
    for (int i = 0; i < 6000; ++i) seen[ops::flip_half(h1, rng).to_string()]++;
    CHECK(seen.size() == 6);  // C(4,2) equally likely two-subsets
    for (const auto& [s, count] : seen) {
        CHECK(BitString::from_string(s).count() == 2);
        CHECK(count > 800);
        CHECK(count < 1200);
        CHECK(ops::density_flip_half(BitString::from_string(s), h1) == frac(1, 6));
    }

    // After two halvings of n=4 all four cells are singletons; the next
    // output flips nothing and equals the last history string.
    std::vector<BitString> hist = {bs("0000")};
    hist.push_back(ops::flip_half(hist, rng));
    hist.push_back(ops::flip_half(hist, rng));
    cells = ops::partition_cells(hist);
    CHECK(cells.size() == 4);
    for (const auto& c : cells) CHECK(c.size() == 1);
    CHECK(ops::flip_half(hist, rng) == hist.back());

    // Exact halving for powers of two: cell sizes n / 2^l after l halvings.
    std::vector<BitString> h8 = {rng.bits(8)};
    for (int l = 1; l <= 3; ++l) {
        h8.push_back(ops::flip_half(h8, rng));
        for (const auto& c : ops::partition_cells(h8)) CHECK(c.size() == 8u >> l);
    }
}

TEST_CASE("samplers match their densities empirically") {
    Rng rng(23);
    const std::size_t n = 4;
    const auto space = all_bitstrings(n);
    for (const auto& op : ops::catalogue(n)) {
        // Fixed representative inputs.
        std::vector<BitString> inputs;
        Rng setup(41);
        for (std::size_t a = 0; a < op.arity; ++a) inputs.push_back(setup.bits(n));
        if (!op.accepts(inputs)) inputs[0] = inputs[1].complemented();
        REQUIRE(op.accepts(inputs));

        const int trials = op.deterministic ? 10 : 30000;
        std::map<std::string, int> counts;
        for (int i = 0; i < trials; ++i) counts[op.sample(inputs, rng).to_string()]++;
        for (const BitString& c : space) {
            const double expect = op.density(c, inputs).get_d();
            const double got =
                static_cast<double>(counts.count(c.to_string()) ? counts[c.to_string()] : 0) /
                trials;
            const double sigma = std::sqrt(std::max(expect * (1 - expect), 1e-9) / trials);
            CHECK(std::abs(got - expect) <= 6 * sigma + 1e-12);
        }
    }
}

TEST_CASE("feasible-set operator density") {
    // inputs w = (000,) with value 1: F = strings agreeing with 000 in exactly
    // one position, i.e. the three weight-2 strings.
    const std::vector<BitString> inputs = {bs("000")};
    const std::vector<std::size_t> values = {1};
    int support = 0;
    for (const BitString& c : all_bitstrings(3)) {
        const Rational d = ops::density_feasible(c, inputs, values);
        if (c.count() == 2) {
            CHECK(d == frac(1, 3));
            ++support;
        } else {
            CHECK(d == 0);
        }
    }
    CHECK(support == 3);

    // empty F: impossible value -> uniform over the cube
    const std::vector<std::size_t> impossible = {9};
    for (const BitString& c : all_bitstrings(3))
        CHECK(ops::density_feasible(c, inputs, impossible) == frac(1, 8));
}
