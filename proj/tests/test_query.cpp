#include <gtest/gtest.h>

#include "qcc/query.hpp"

using namespace qcc;

TEST(BernsteinVazirani, RecoversEverySignedCodeword) {
    Rng rng(1);
    for (int m = 1; m <= 6; ++m)
        for (std::size_t s = 0; s < (std::size_t{1} << m); ++s)
            for (int b : {1, -1}) {
                Signs x = hadamard_codeword(from_index(s, m));
                for (auto& v : x) v = static_cast<int8_t>(v * b);
                QueryOracle o(x);
                EXPECT_EQ(bernstein_vazirani(o, rng), from_index(s, m));
                EXPECT_EQ(o.count(), 1u);
            }
}

TEST(BernsteinVazirani, WorksOnABlockOfALongerInput) {
    Rng rng(2);
    Signs x(12, 1);
    const Signs h = hadamard_codeword(from_index(2, 2));
    std::copy(h.begin(), h.end(), x.begin() + 4);
    QueryOracle o(x);
    EXPECT_EQ(bernstein_vazirani(o, 4, 4, rng), from_index(2, 2));
    EXPECT_THROW(bernstein_vazirani(o, 10, 4, rng), std::out_of_range);
}

TEST(GroverEquality, EqualIsNeverWrong) {
    Rng rng(3);
    for (std::size_t m : {1u, 3u, 8u, 13u}) {
        Signs a(m);
        for (auto& v : a) v = (rng() & 1) ? 1 : -1;
        QueryOracle o(a);
        EXPECT_TRUE(grover_equality(o, a, 0, rng).equal);
    }
}

TEST(GroverEquality, FindsASingleDifferenceUsually) {
    int found = 0;
    const int trials = 400;
    for (int t = 0; t < trials; ++t) {
        Rng rng(static_cast<std::uint64_t>(t));
        Signs a(32, 1), b(32, 1);
        a[static_cast<std::size_t>(t) % 32] = -1;
        QueryOracle o(a);
        const auto r = grover_equality(o, b, 0, rng);
        if (!r.equal) {
            EXPECT_EQ(r.index, static_cast<std::size_t>(t) % 32);
            ++found;
        }
    }
    EXPECT_GE(found, trials * 2 / 3);
}

// Every 2-bit block is a signed codeword, so all 256 inputs of PARITY_2 o~ h_IP1 are exact cases.
TEST(RtildeQuery, MatchesClassicalOnAllInputsForIp1) {
    const Gadget G = inner_product(1, 1);
    const BooleanFunction r = parity_spec(2).to_function();
    Rng rng(4);
    for (std::size_t idx = 0; idx < 256; ++idx) {
        const Signs in = from_index(idx, 8);
        QueryOracle o(in);
        EXPECT_EQ(rtilde_hG_query_algorithm(o, r, G, rng), rtilde_hG_classical(in, r, G)) << idx;
    }
}

TEST(RtildeQuery, NonCodewordBlockGivesMinusOneClassically) {
    const Gadget G = inner_product(2, 1);
    const BooleanFunction r = parity_spec(2).to_function();
    Signs in(16, 1);
    in[1] = -1;  // (1,-1,1,1) is not a codeword
    EXPECT_EQ(rtilde_hG_classical(in, r, G), -1);
}

TEST(RtildeQuery, QueryCountIsLinearPlusSqrt) {
    Rng rng(5);
    const Gadget G = inner_product(2, 1);
    const BooleanFunction r = parity_spec(4).to_function();
    Signs in;
    for (int i = 0; i < 8; ++i) {
        const Signs h = hadamard_codeword(from_index(static_cast<std::size_t>(i) % 4, 2));
        in.insert(in.end(), h.begin(), h.end());
    }
    QueryOracle o(in);
    rtilde_hG_query_algorithm(o, r, G, rng);
    // 2n BV queries + 2n sign queries + Grover over 32 positions.
    EXPECT_GE(o.count(), 16u);
    EXPECT_LE(o.count(), 16u + 64u);
}

TEST(RtildeQuery, RejectsWrongLength) {
    Rng rng(6);
    QueryOracle o(Signs(5, 1));
    EXPECT_THROW(rtilde_hG_query_algorithm(o, parity_spec(2).to_function(), inner_product(1, 1), rng), std::invalid_argument);
}
