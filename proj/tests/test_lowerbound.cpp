#include <gtest/gtest.h>

#include "qcc/lowerbound.hpp"
#include "qcc/oracles.hpp"

using namespace qcc;

namespace {

const double kThird = 1.0 / 3.0;

std::vector<SymmetricSpec> all_symmetric(int n) {
    std::vector<SymmetricSpec> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << (n + 1)); ++mask) {
        std::vector<int8_t> w(static_cast<std::size_t>(n + 1));
        for (int k = 0; k <= n; ++k) w[static_cast<std::size_t>(k)] = ((mask >> k) & 1u) ? -1 : 1;
        out.emplace_back(n, w);
    }
    return out;
}

Distribution random_distribution(std::size_t size, Rng& rng) {
    Distribution d(size);
    double s = 0.0;
    for (auto& v : d) s += (v = uniform01(rng) + 0.01);
    for (auto& v : d) v /= s;
    return d;
}

Gadget random_gadget(int j, int k, Rng& rng) {
    std::vector<int8_t> t(std::size_t{1} << (j + k));
    for (auto& v : t) v = (rng() & 1) ? 1 : -1;
    return Gadget("rand", j, k, t, 1);
}

}  // namespace

TEST(ApproxDegree, ParityIsFullDegree) {
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(approx_degree(parity_spec(n).to_function()), n);
}

TEST(ApproxDegree, ConstantIsZero) {
    EXPECT_EQ(approx_degree(constant_spec(4, -1).to_function()), 0);
    const auto r = approx_degree_report(constant_spec(3, 1).to_function());
    EXPECT_FALSE(r.witness.has_value());
}

// Symmetrization reduces the best error of a symmetric f to a univariate problem on 0..n,
// which the oracle solves by reference sets in exact arithmetic.
TEST(ApproxDegree, BestErrorsMatchChebyshevOracle) {
    for (int n = 2; n <= 4; ++n)
        for (const auto& f : all_symmetric(n))
            for (int d = 0; d < n; ++d) {
                const double lp = best_approximation(f.to_function(), d).error;
                EXPECT_NEAR(lp, oracle::chebyshev_symmetric_error(f, d).get_d(), 1e-12) << "n=" << n << " d=" << d;
            }
}

TEST(ApproxDegree, DegreesMatchChebyshevOracle) {
    const mpq_class third(1, 3);
    for (int n = 2; n <= 5; ++n)
        for (const auto& f : all_symmetric(n)) {
            if (n == 5 && f.weight_values[0] == -1) continue;  // negation symmetry halves the n = 5 sweep
            EXPECT_EQ(approx_degree(f.to_function()), oracle::chebyshev_symmetric_degree(f, third));
        }
}

TEST(ApproxDegree, OrFourFromOracle) {
    const auto f = or_spec(4);
    const int d = approx_degree(f.to_function());
    EXPECT_EQ(d, oracle::chebyshev_symmetric_degree(f, mpq_class(1, 3)));
    EXPECT_EQ(d, 2);
}

TEST(DualWitness, ExistsExactlyUpToTheDegree) {
    Rng rng(3);
    std::vector<BooleanFunction> fs{or_spec(4).to_function(), maj_spec(5).to_function(), BooleanFunction(4, inner_product(2, 1).table)};
    for (int rep = 0; rep < 4; ++rep) {
        std::vector<int8_t> t(16);
        for (auto& v : t) v = (rng() & 1) ? 1 : -1;
        fs.emplace_back(4, t);
    }
    for (const auto& f : fs) {
        const int d = approx_degree(f);
        if (d > 0) {
            const auto w = dual_witness(f, d, kThird);
            ASSERT_TRUE(w.has_value());
            EXPECT_TRUE(verify_witness(f, *w, kThird).ok);
        }
        if (d + 1 <= f.n) {
            EXPECT_FALSE(dual_witness(f, d + 1, kThird).has_value());
        }
    }
}

TEST(DualWitness, DoubleRouteAgreesWithRationalRoute) {
    const auto f = maj_spec(5).to_function();
    for (int d = 1; d <= 3; ++d) {
        const auto q = witness_lp_as<mpq_class>(f, d, mpq_class(1, 3));
        const auto x = witness_lp_as<double>(f, d, kThird);
        EXPECT_NEAR(q.value, x.value, 1e-9);
        EXPECT_EQ(q.above, x.above);
        EXPECT_NEAR(q.value, best_approximation(f, d - 1).error, 1e-12);
    }
}

TEST(DualWitness, ArityCap) {
    EXPECT_THROW(approx_degree(parity_spec(9).to_function()), std::length_error);
}

TEST(SpectralNorm, ConstantAndMonotone) {
    EXPECT_NEAR(approx_spectral_norm(constant_spec(3, 1).to_function(), kThird), 2.0 / 3.0, 1e-12);
    const auto f = maj_spec(3).to_function();
    EXPECT_LE(approx_spectral_norm(f, 0.4), approx_spectral_norm(f, 0.2) + 1e-12);
}

TEST(SpectralNorm, InnerProductLowerBound) {
    for (int m : {2, 3}) {
        const BooleanFunction ip(2 * m, inner_product(m, 1).table);
        EXPECT_GE(approx_spectral_norm(ip, kThird), 2.0 / 3.0 * std::ldexp(1.0, m) - 1e-9) << m;
    }
}

TEST(Discrepancy, ConstantGadgetIsOne) {
    const Gadget one("one", 2, 3, std::vector<int8_t>(32, 1), 0);
    EXPECT_NEAR(discrepancy_uniform(one), 1.0, 1e-15);
}

TEST(Discrepancy, MatchesIndependentOraclesForSmallShapes) {
    Rng rng(5);
    for (int j = 1; j <= 4; ++j)
        for (int k = 1; j + k <= 8; ++k) {
            const Gadget g = random_gadget(j, k, rng);
            const Distribution lam = random_distribution(g.table.size(), rng);
            const double fast = discrepancy(g, lam);
            if ((1 << j) + (1 << k) <= 22) {
                EXPECT_NEAR(fast, oracle::naive_discrepancy(g, lam), 1e-12) << j << "," << k;
            }
            if (k <= 4) {
                EXPECT_NEAR(fast, oracle::discrepancy_by_columns(g, lam), 1e-12) << j << "," << k;
            }
        }
}

TEST(Discrepancy, AddressingExactValues) {
    for (int n : {2, 4, 8}) {
        EXPECT_TRUE(addr_gram_check(n));
        const double d = discrepancy_uniform(addressing(n, 1));
        EXPECT_EQ(d, oracle::addr_disc_uniform(n).get_d());
        EXPECT_LE(d, 1.0 / std::sqrt(n));
    }
    EXPECT_EQ(oracle::addr_disc_uniform(8), mpq_class(35, 256));
}

TEST(Discrepancy, SideCap) {
    EXPECT_THROW(discrepancy_uniform(inner_product(5, 1)), std::length_error);
}

TEST(Balance, UniformVersusGadgets) {
    for (int n : {2, 4, 8}) EXPECT_TRUE(is_balanced(uniform_distribution(std::size_t{1} << (log2_exact(n) + n)), addressing(n, 1)));
    EXPECT_FALSE(is_balanced(uniform_distribution(4), Gadget("one", 1, 1, {1, 1, 1, 1}, 0)));
    // IP_m has bias exactly 2^-m under the uniform distribution.
    for (int m = 1; m <= 4; ++m) {
        const Gadget g = inner_product(m, 1);
        EXPECT_DOUBLE_EQ(signed_mass(uniform_distribution(g.table.size()), g), std::ldexp(1.0, -m));
        EXPECT_TRUE(is_balanced(balanced_distribution(g), g));
    }
}

TEST(Lambda, SumsAndMarginals) {
    const Gadget g = inner_product(1, 1);
    const Distribution mu = balanced_distribution(g);
    Rng rng(6);
    for (int rep = 0; rep < 5; ++rep) {
        const Distribution nu = random_distribution(4, rng);
        const auto lam = lambda_construct(nu, mu, g, 2);
        EXPECT_NEAR(lam.total, 1.0, 1e-12);
        EXPECT_LE(lam.max_marginal_error, 1e-10);
    }
    EXPECT_THROW(lambda_construct(uniform_distribution(4), uniform_distribution(4), g, 2), std::invalid_argument);
}

TEST(Lambda, UniformNuOnOneBlockGivesMu) {
    const Gadget g = inner_product(2, 1);
    const Distribution mu = balanced_distribution(g);
    const auto lam = lambda_construct(Distribution{0.5, 0.5}, mu, g, 1);
    for (std::size_t i = 0; i < mu.size(); ++i) EXPECT_NEAR(lam.weights[i], mu[i], 1e-15);
}

TEST(Lambda, WitnessCorrelationCarriesOver) {
    const Gadget g = inner_product(1, 1);
    const BooleanFunction r = parity_spec(2).to_function();
    const auto w = dual_witness(r, 2, kThird);
    ASSERT_TRUE(w.has_value());
    Distribution nu(4);
    std::vector<int8_t> h(4);
    for (std::size_t z = 0; z < 4; ++z) nu[z] = std::fabs(w->psi[z]), h[z] = w->psi[z] >= 0 ? 1 : -1;
    const auto lam = lambda_construct(nu, balanced_distribution(g), g, 2);
    const double corr = correlation(compose(r, g).table, compose(BooleanFunction(2, h), g).table, lam.weights);
    EXPECT_NEAR(corr, w->correlation, 1e-12);
    EXPECT_GT(corr, kThird);
}

// disc_lambda(h o G) <= disc_mu(G)^{d beta} / (1 - disc_mu(G)^beta) at beta = 1/2.
TEST(Lambda, ComposedDiscrepancyChain) {
    const Gadget g = inner_product(1, 1);
    const BooleanFunction r = parity_spec(2).to_function();
    const auto w = dual_witness(r, 2, kThird);
    ASSERT_TRUE(w.has_value());
    Distribution nu(4);
    std::vector<int8_t> h(4);
    for (std::size_t z = 0; z < 4; ++z) nu[z] = std::fabs(w->psi[z]), h[z] = w->psi[z] >= 0 ? 1 : -1;
    const Distribution mu = balanced_distribution(g);
    const auto lam = lambda_construct(nu, mu, g, 2);
    const double lhs = discrepancy(compose(BooleanFunction(2, h), g), lam.weights);
    const double dm = discrepancy(g, mu);
    EXPECT_DOUBLE_EQ(dm, 0.5);
    EXPECT_LE(lhs, std::pow(dm, 2 * 0.5) / (1.0 - std::pow(dm, 0.5)));
}

TEST(XorLemma, KOneHasSlackEight) {
    const auto r = xor_lemma_check(and2(), uniform_distribution(4), 1);
    EXPECT_DOUBLE_EQ(r.rhs, 8.0 * r.lhs);
    EXPECT_TRUE(r.holds);
}

TEST(XorLemma, LeftSideMatchesOracles) {
    const auto a = xor_lemma_check(and2(), uniform_distribution(4), 2);
    const Gadget q = compose(parity_spec(2).to_function(), and2());
    EXPECT_NEAR(a.lhs, oracle::naive_discrepancy(q, product_distribution(uniform_distribution(4), and2(), 2)), 1e-15);
    EXPECT_TRUE(a.holds);
    const Gadget ip = inner_product(2, 1);
    const auto b = xor_lemma_check(ip, uniform_distribution(16), 2);
    const Gadget q2 = compose(parity_spec(2).to_function(), ip);
    EXPECT_NEAR(b.lhs, oracle::discrepancy_by_columns(q2, product_distribution(uniform_distribution(16), ip, 2)), 1e-15);
    EXPECT_TRUE(b.holds);
    EXPECT_THROW(xor_lemma_check(and2(), uniform_distribution(4), 4), std::length_error);
}

TEST(Gdm, BoundArithmetic) {
    EXPECT_NEAR(gdm_bound(1.0 / 3.0, 0.4, 1.0), std::log2(2.0 / 15.0), 1e-12);
    EXPECT_NEAR(gdm_bound(0.5, 0.4, 0.05) - gdm_bound(0.5, 0.4, 0.1), 1.0, 1e-12);
    EXPECT_THROW(gdm_bound(0.1, 0.2, 0.5), std::invalid_argument);
    EXPECT_THROW(gdm_bound(0.5, 0.4, 0.0), std::invalid_argument);
}

TEST(Gdm, AddressingPipelineGrowsWithLogN) {
    double prev = -1e9;
    for (int n : {4, 8}) {
        const double b = gdm_bound(1.0 / 3.0, 0.4, oracle::addr_disc_uniform(n).get_d());
        EXPECT_GE(b, 0.5 * std::log2(n) - 2.0);
        EXPECT_GT(b, prev);
        prev = b;
    }
}

TEST(Reduction, EmbedBothBoxes) {
    const BooleanFunction r = parity_spec(2).to_function();
    const Gadget g = inner_product(1, 1);
    for (Box b : {Box::And, Box::Xor})
        for (std::size_t x = 0; x < 4; ++x)
            for (std::size_t y = 0; y < 4; ++y) {
                const auto e = embed_reduction(r, g, from_index(x, 2), from_index(y, 2), b);
                EXPECT_TRUE(e.equal);
                if (b == Box::Xor) {
                    EXPECT_EQ(e.X[2], 1);
                    EXPECT_EQ(e.Y[0], 1);
                }
            }
}

TEST(Reduction, EmbedOtherCompositions) {
    const BooleanFunction r = or_spec(2).to_function();
    const Gadget g = inner_product(2, 1);
    for (Box b : {Box::And, Box::Xor})
        for (std::size_t x = 0; x < 16; ++x)
            for (std::size_t y = 0; y < 16; ++y) EXPECT_TRUE(embed_reduction(r, g, from_index(x, 4), from_index(y, 4), b).equal);
}

TEST(Reduction, AddressingVariant) {
    for (std::size_t x = 0; x < 4; ++x)
        for (std::size_t y = 0; y < 16; ++y) EXPECT_TRUE(embed_reduction_addr(2, from_index(x, 2), from_index(y, 4)).equal);
}

// compose_tilde on the hadamardized table and the per-block evaluation are independent routes.
TEST(Reduction, ComposeTildeTableMatchesBlockRoute) {
    for (const Gadget& g : {inner_product(1, 1), and2(), xor2()}) {
        const BooleanFunction r = parity_spec(2).to_function();
        const auto table = compose_tilde(r, hadamardize(g));
        for (std::size_t idx = 0; idx < table.size(); ++idx) EXPECT_EQ(table.table[idx], rtilde_hG_value(r, g, from_index(idx, table.n)));
    }
}

TEST(Projection, InnerProductEmbedding) {
    for (int n : {2, 4}) {
        const auto rep = ip_projection_check(n);
        EXPECT_TRUE(rep.ok());
        EXPECT_EQ(rep.free_variables, 2 * n * log2_exact(static_cast<std::size_t>(n)));
    }
    EXPECT_THROW(ip_projection_check(8), std::length_error);
}
