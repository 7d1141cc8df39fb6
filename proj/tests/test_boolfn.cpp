#include <gtest/gtest.h>

#include <sstream>

#include "qcc/boolfn.hpp"

using namespace qcc;

TEST(Signs, IndexConventionIsMsbFirst) {
    // bit = 1 iff the entry is -1; coordinate 0 is the top bit.
    EXPECT_EQ(to_index(Signs{-1, 1, 1}), 4u);
    EXPECT_EQ(from_index(1, 3), (Signs{1, 1, -1}));
    EXPECT_EQ(from_index(1, 3, BitOrder::LsbFirst), (Signs{-1, 1, 1}));
    for (std::size_t i = 0; i < 32; ++i) EXPECT_EQ(to_index(from_index(i, 5)), i);
}

TEST(Codeword, RoundTripAllSmallLengths) {
    for (int m = 1; m <= 5; ++m)
        for (std::size_t s = 0; s < (std::size_t{1} << m); ++s)
            for (int b : {1, -1}) {
                Signs x = hadamard_codeword(from_index(s, m));
                for (auto& v : x) v = static_cast<int8_t>(v * b);
                const auto d = decode_codeword(x);
                ASSERT_TRUE(d.has_value());
                EXPECT_EQ(d->s, from_index(s, m));
                EXPECT_EQ(d->sign, b);
            }
}

TEST(Codeword, EntryIsCharacterOfPosition) {
    // H(s)_p = (-1)^{|s & p|} under the shared index convention.
    const Signs s = from_index(0b101, 3);
    const Signs h = hadamard_codeword(s);
    for (std::size_t p = 0; p < 8; ++p) EXPECT_EQ(h[p], parity_sign(0b101 & p));
}

TEST(Codeword, SingleFlipIsNotACodeword) {
    for (std::size_t s = 0; s < 8; ++s)
        for (std::size_t p = 0; p < 8; ++p) {
            Signs x = hadamard_codeword(from_index(s, 3));
            x[p] = static_cast<int8_t>(-x[p]);
            EXPECT_FALSE(decode_codeword(x).has_value());
        }
}

TEST(Codeword, MixedOrderBreaksRoundTrip) {
    const Signs s = from_index(1, 2);
    const auto d = decode_codeword(hadamard_codeword(s, BitOrder::LsbFirst));
    ASSERT_TRUE(d.has_value());
    EXPECT_NE(d->s, s);
}

TEST(Gadget, LibraryTables) {
    const Gadget a = and2();
    EXPECT_EQ(a.q, 1);
    EXPECT_EQ(a.table, (std::vector<int8_t>{1, 1, 1, -1}));
    EXPECT_EQ(xor2().table, (std::vector<int8_t>{1, -1, -1, 1}));
    const Gadget ip = inner_product(2, 3);
    EXPECT_EQ(ip.q, 3);
    EXPECT_EQ(ip(Signs{-1, -1}, Signs{-1, 1}), -1);
    EXPECT_EQ(ip(Signs{-1, -1}, Signs{-1, -1}), 1);
    const Gadget ad = addressing(4, 1);
    EXPECT_EQ(ad.j, 2);
    EXPECT_EQ(ad.k, 4);
    EXPECT_EQ(ad(Signs{1, -1}, Signs{1, -1, 1, 1}), -1);
    EXPECT_THROW(gadget_library("ip", 2, 0), std::invalid_argument);
    EXPECT_THROW(gadget_library("nope", 1, 1), std::invalid_argument);
}

TEST(Gadget, ValidatesTable) {
    EXPECT_THROW(Gadget("g", 1, 1, {1, 1, 1}, 1), std::invalid_argument);
    EXPECT_THROW(Gadget("g", 1, 1, {1, 0, 1, 1}, 1), std::invalid_argument);
    EXPECT_THROW(Gadget("g", 1, 1, {1, -1, 1, 1}, 0), std::invalid_argument);
    EXPECT_NO_THROW(Gadget("g", 1, 1, {1, 1, 1, 1}, 0));
    EXPECT_THROW(BooleanFunction(kMaxTableBits + 1, {}), std::length_error);
}

TEST(Symmetric, GammaValues) {
    // Gamma = min |2k - n + 1| over jumps k -> k+1.
    EXPECT_EQ(gamma(parity_spec(5)), 0);
    EXPECT_EQ(gamma(parity_spec(4)), 1);
    EXPECT_EQ(gamma(or_spec(8)), 7);
    EXPECT_EQ(gamma(maj_spec(7)), 0);
    EXPECT_EQ(gamma(threshold_spec(64, 8)), 49);
    EXPECT_EQ(gamma(constant_spec(6, 1)), 7);
}

TEST(Symmetric, MajorityIsStrict) {
    const auto m = maj_spec(4);
    EXPECT_EQ(m.at_weight(2), 1);
    EXPECT_EQ(m.at_weight(3), -1);
}

TEST(Symmetric, FromFunctionDetectsSymmetry) {
    EXPECT_TRUE(SymmetricSpec::from_function(parity_spec(4).to_function()).has_value());
    const auto dict = BooleanFunction::from(2, [](const Signs& x) { return x[0]; });
    EXPECT_FALSE(SymmetricSpec::from_function(dict).has_value());
}

TEST(Compose, ParityOfXorIsParity) {
    const Gadget c = compose(parity_spec(3).to_function(), xor2());
    EXPECT_EQ(c.q, 3);
    for (std::size_t x = 0; x < 8; ++x)
        for (std::size_t y = 0; y < 8; ++y) EXPECT_EQ(c.at(x, y), parity_sign(x ^ y));
}

TEST(Compose, OrOfAndIsIntersection) {
    const Gadget c = compose(or_spec(3).to_function(), and2());
    for (std::size_t x = 0; x < 8; ++x)
        for (std::size_t y = 0; y < 8; ++y) EXPECT_EQ(c.at(x, y), (x & y) ? -1 : 1);
}

TEST(Hadamardize, DefinedExactlyOnSignedCodewords) {
    const auto h = hadamardize(inner_product(1, 1));
    EXPECT_EQ(h.n, 4);
    int defined = 0;
    for (auto v : h.table) defined += v != 0;
    EXPECT_EQ(defined, 16);  // 2 * 2 codewords with 2 * 2 signs
    for (std::size_t i = 0; i < h.table.size(); ++i) {
        const Signs z = from_index(i, 4);
        const auto v = hadamardized_value(inner_product(1, 1), Signs(z.begin(), z.begin() + 2), Signs(z.begin() + 2, z.end()));
        EXPECT_EQ(v.value_or(0), h.table[i]);
    }
}

TEST(ComposeTilde, UndefinedBlockGivesMinusOne) {
    const auto h = hadamardize(and2());
    const auto f = compose_tilde(parity_spec(2).to_function(), h);
    EXPECT_EQ(f.n, 8);
    int minus = 0;
    for (auto v : f.table) minus += v == -1;
    EXPECT_GT(minus, 256 - 16 * 16);
}

TEST(Transitivity, GeneratorsActOnOneOrbit) {
    for (std::size_t n : {2u, 4u, 8u}) EXPECT_TRUE(single_orbit(2 * n, transitive_perms(n)));
    EXPECT_FALSE(single_orbit(4, {Permutation{1, 0, 2, 3}}));
}

TEST(Transitivity, TableRouteMatchesCodewordRoute) {
    for (std::size_t n : {2u, 4u}) {
        const Gadget g = inner_product(log2_exact(n), 1);
        const auto perms = transitive_perms(n);
        EXPECT_TRUE(verify_transitive(hadamardize(g), perms));
        EXPECT_TRUE(verify_transitive_hadamardized(g, perms));
    }
    // Dictator G(x, y) = x is not invariant under swapping the blocks.
    const Gadget dict = Gadget::from("dict", 1, 1, 1, [](const Signs& x, const Signs&) { return x[0]; });
    EXPECT_FALSE(verify_transitive(hadamardize(dict), transitive_perms(2)));
    EXPECT_FALSE(verify_transitive_hadamardized(dict, transitive_perms(2)));
}

TEST(TruthTable, RoundTrip) {
    std::stringstream ss;
    write_truth_table(ss, 2, {1, -1, 0, 1});
    const auto tt = read_truth_table(ss);
    EXPECT_EQ(tt.n, 2);
    EXPECT_EQ(tt.entries, (std::vector<int8_t>{1, -1, 0, 1}));
    EXPECT_TRUE(tt.partial());
    std::stringstream bad("n=2\n1 1 1\n");
    EXPECT_THROW(read_truth_table(bad), std::runtime_error);
}
