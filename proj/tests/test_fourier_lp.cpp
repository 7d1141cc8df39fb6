#include <gtest/gtest.h>

#include "qcc/fourier.hpp"
#include "qcc/lp.hpp"
#include "qcc/oracles.hpp"

using namespace qcc;

namespace {

BooleanFunction random_function(int n, Rng& rng) {
    std::vector<int8_t> t(std::size_t{1} << n);
    for (auto& v : t) v = (rng() & 1) ? 1 : -1;
    return BooleanFunction(n, t);
}

}  // namespace

TEST(Fourier, FastTransformMatchesNaiveSum) {
    Rng rng(1);
    for (int n = 1; n <= 6; ++n) {
        const auto f = random_function(n, rng);
        const auto fast = walsh_hadamard(f);
        const auto slow = oracle::naive_fourier(std::vector<double>(f.table.begin(), f.table.end()));
        for (std::size_t S = 0; S < f.size(); ++S) EXPECT_NEAR(fast.coeff[S], slow[S], 1e-12);
    }
}

TEST(Fourier, ParityIsASingleCharacter) {
    for (int n = 1; n <= 6; ++n) {
        const auto s = walsh_hadamard(parity_spec(n).to_function());
        for (std::size_t S = 0; S < s.coeff.size(); ++S) EXPECT_EQ(s.coeff[S], S == s.coeff.size() - 1 ? 1.0 : 0.0);
    }
}

TEST(Fourier, InnerProductCoefficientsHaveEqualMagnitude) {
    for (int m = 1; m <= 4; ++m)
        for (auto v : walsh_hadamard_int(inner_product(m, 1).table)) EXPECT_EQ(std::llabs(v), std::int64_t{1} << m);
}

TEST(Fourier, PlancherelAndRoundTrip) {
    Rng rng(2);
    for (int n = 1; n <= 6; ++n)
        for (int rep = 0; rep < 5; ++rep) {
            const auto f = random_function(n, rng), g = random_function(n, rng);
            const auto sf = walsh_hadamard(f), sg = walsh_hadamard(g);
            double lhs = 0.0, rhs = 0.0;
            for (std::size_t x = 0; x < f.size(); ++x) lhs += f.table[x] * g.table[x];
            lhs /= static_cast<double>(f.size());
            for (std::size_t S = 0; S < f.size(); ++S) rhs += sf.coeff[S] * sg.coeff[S];
            EXPECT_NEAR(lhs, rhs, 1e-12);
            const auto back = inverse_walsh_hadamard(sf);
            for (std::size_t x = 0; x < f.size(); ++x) EXPECT_NEAR(back[x], f.table[x], 1e-10);
            // Integer route is exact.
            auto ints = walsh_hadamard_int(f.table);
            fwht_inplace(ints);
            for (std::size_t x = 0; x < f.size(); ++x) EXPECT_EQ(ints[x], static_cast<std::int64_t>(f.size()) * f.table[x]);
        }
}

TEST(Fourier, RejectsNonPowerOfTwo) {
    std::vector<double> v(6, 1.0);
    EXPECT_THROW(fwht_inplace(v), std::invalid_argument);
}

TEST(Rational, ContinuedFractions) {
    EXPECT_EQ(rational_from_double(1.0 / 3.0), mpq_class(1, 3));
    EXPECT_EQ(rational_from_double(0.4), mpq_class(2, 5));
    EXPECT_EQ(rational_from_double(-0.125), mpq_class(-1, 8));
    EXPECT_EQ(rational_from_double(3.0), mpq_class(3));
}

template <class T>
class LpTest : public ::testing::Test {};
using LpTypes = ::testing::Types<mpq_class, double>;
TYPED_TEST_SUITE(LpTest, LpTypes);

TYPED_TEST(LpTest, TextbookOptimum) {
    using T = TypeParam;
    // max 3x + 5y st x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6).
    LinearProgram<T> lp(2);
    lp.cost = {T(-3), T(-5)};
    lp.add_row({T(1), T(0)}, RowSense::Le, T(4));
    lp.add_row({T(0), T(2)}, RowSense::Le, T(12));
    lp.add_row({T(3), T(2)}, RowSense::Le, T(18));
    const auto s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_EQ(LpTraits<T>::to_double(s.objective), -36.0);
    EXPECT_EQ(LpTraits<T>::to_double(s.x[0]), 2.0);
    EXPECT_EQ(LpTraits<T>::to_double(s.x[1]), 6.0);
}

TYPED_TEST(LpTest, EqualityAndGreaterRows) {
    using T = TypeParam;
    // min x + y st x + y >= 2, x - y = 1/2.
    LinearProgram<T> lp(2);
    lp.cost = {T(1), T(1)};
    lp.add_row({T(1), T(1)}, RowSense::Ge, T(2));
    lp.add_row({T(1), T(-1)}, RowSense::Eq, T(1) / T(2));
    const auto s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_NEAR(LpTraits<T>::to_double(s.objective), 2.0, 1e-12);
    EXPECT_NEAR(LpTraits<T>::to_double(s.x[0]), 1.25, 1e-12);
}

TYPED_TEST(LpTest, InfeasibleAndUnbounded) {
    using T = TypeParam;
    LinearProgram<T> inf(1);
    inf.add_row({T(1)}, RowSense::Le, T(1));
    inf.add_row({T(1)}, RowSense::Ge, T(2));
    EXPECT_EQ(solve_lp(inf).status, LpStatus::Infeasible);
    LinearProgram<T> unb(2);
    unb.cost = {T(-1), T(0)};
    unb.add_row({T(1), T(-1)}, RowSense::Le, T(1));
    EXPECT_EQ(solve_lp(unb).status, LpStatus::Unbounded);
}

TYPED_TEST(LpTest, RedundantEqualityRows) {
    using T = TypeParam;
    LinearProgram<T> lp(2);
    lp.cost = {T(1), T(2)};
    lp.add_row({T(1), T(1)}, RowSense::Eq, T(3));
    lp.add_row({T(2), T(2)}, RowSense::Eq, T(6));
    const auto s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_NEAR(LpTraits<T>::to_double(s.objective), 3.0, 1e-12);
}

TEST(Lp, DegenerateCycleExampleTerminates) {
    // Beale's example cycles under the largest-coefficient rule; Bland's rule must finish.
    LinearProgram<mpq_class> lp(4);
    lp.cost = {mpq_class(-3, 4), mpq_class(150), mpq_class(-1, 50), mpq_class(6)};
    lp.add_row({mpq_class(1, 4), mpq_class(-60), mpq_class(-1, 25), mpq_class(9)}, RowSense::Le, 0);
    lp.add_row({mpq_class(1, 2), mpq_class(-90), mpq_class(-1, 50), mpq_class(3)}, RowSense::Le, 0);
    lp.add_row({mpq_class(0), mpq_class(0), mpq_class(1), mpq_class(0)}, RowSense::Le, 1);
    const auto s = solve_lp(lp);
    ASSERT_EQ(s.status, LpStatus::Optimal);
    EXPECT_EQ(s.objective, mpq_class(-1, 20));
}

TEST(Lp, WidthMismatchThrows) {
    LinearProgram<double> lp(2);
    EXPECT_THROW(lp.add_row({1.0}, RowSense::Le, 1.0), std::invalid_argument);
}
