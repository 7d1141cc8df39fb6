#include <gtest/gtest.h>

#include "qcc/search.hpp"

using namespace qcc;

namespace {

Signs weight_string(std::size_t n, std::initializer_list<std::size_t> minus) {
    Signs z(n, 1);
    for (auto i : minus) z[i] = -1;
    return z;
}

SearchInstance random_instance(const Gadget& G, std::size_t n, Rng& rng) {
    std::vector<Signs> xs(n), ys(n);
    for (auto& x : xs) x = from_index(rng() % G.rows(), G.j);
    for (auto& y : ys) y = from_index(rng() % G.cols(), G.k);
    return SearchInstance(G, xs, ys);
}

}  // namespace

TEST(SearchInstance, PlantedHasRequestedZ) {
    const Signs z = weight_string(16, {3, 9});
    const auto inst = SearchInstance::planted(and2(), z);
    EXPECT_EQ(inst.z(), z);
    EXPECT_EQ(inst.solutions(), 2u);
    auto p = inst;
    p.patch(3, PatchRegistry::standard().lookup(and2(), 1));
    EXPECT_EQ(p.solutions(), 1u);
    EXPECT_THROW(SearchInstance(and2(), std::vector<Signs>(3, Signs{1}), std::vector<Signs>(3, Signs{1})), std::invalid_argument);
}

TEST(PatchRegistry, FallsBackToFirstMatchingEntry) {
    const auto reg = PatchRegistry::standard();
    const auto p = reg.lookup(inner_product(2, 1), -1);
    EXPECT_EQ(inner_product(2, 1)(p.x, p.y), -1);
    EXPECT_THROW(reg.lookup(Gadget("one", 1, 1, {1, 1, 1, 1}, 0), -1), std::invalid_argument);
}

// Dual route: the full n^2 joint simulation and the diagonal-sector reduction must give the same
// outcome distribution on |i>|i> and the same metered cost.
TEST(SearchBackends, JointAndSectorAgree) {
    const ProtocolConstants pc;
    Rng gen(12);
    for (const Gadget& G : {and2(), inner_product(2, 2), xor2()})
        for (std::size_t n : {4u, 8u, 16u})
            for (const NoiseModel& noise : {NoiseModel::perfect(), NoiseModel::phase_on_complement(), NoiseModel::random_phases(5)})
                for (int k : {1, 2}) {
                    const SearchInstance inst = random_instance(G, n, gen);
                    Rng r1(1), r2(1);
                    CostMeter m1, m2;
                    Session joint{r1, m1, pc, noise, Backend::Joint};
                    Session sector{r2, m2, pc, noise, Backend::Sector};
                    const auto a = simulate_run(inst, k, joint);
                    const auto b = simulate_run(inst, k, sector);
                    double off = 0.0;
                    for (std::size_t i = 0; i < n; ++i) {
                        EXPECT_NEAR(a->sampler.probability(i * n + i), b->sampler.probability(i), 1e-10) << G.name << " n=" << n << " " << noise.describe();
                        for (std::size_t j = 0; j < n; ++j)
                            if (j != i) off += a->sampler.probability(i * n + j);
                    }
                    EXPECT_NEAR(off, 0.0, 1e-10);
                    EXPECT_EQ(a->meter.total(), b->meter.total());
                    EXPECT_EQ(a->meter.epr_consumed, b->meter.epr_consumed);
                }
}

TEST(SearchCost, FirstLevelCostsThirteen) {
    const ProtocolConstants pc;
    // reflection 9 + 2 at eps_1 = 1/400, oracle 2 qubits for AND_2.
    EXPECT_EQ(search_run_cost(64, 16, and2(), pc), 13u + 12u);
    EXPECT_EQ(search_run_cost(64, 64, and2(), pc), 12u);
}

TEST(SearchCost, MeterMatchesClosedForm) {
    const ProtocolConstants pc;
    for (std::size_t n : {16u, 64u, 256u})
        for (std::size_t t : {1u, 2u, 4u}) {
            Rng rng(3);
            CostMeter m;
            Session s{rng, m, pc, NoiseModel::phase_on_complement()};
            const auto inst = SearchInstance::planted(and2(), Signs(n, 1));
            EXPECT_FALSE(search_known_t(inst, t, s).has_value());
            EXPECT_EQ(m.total() - m.charged("verify_G"), search_run_cost(n, t, and2(), pc));
        }
}

TEST(Search, NeverReportsANonSolution) {
    const ProtocolConstants pc;
    SimCache cache;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        Rng rng(seed);
        CostMeter m;
        Session s{rng, m, pc, NoiseModel::random_phases(seed), Backend::Sector, nullptr, nullptr, &cache};
        const Signs z = weight_string(32, {static_cast<std::size_t>(seed % 32)});
        const auto inst = SearchInstance::planted(and2(), z);
        if (auto hit = search_known_t(inst, 1, s)) {
            EXPECT_EQ(z[*hit], -1);
        }
        EXPECT_FALSE(search_unknown(SearchInstance::planted(and2(), Signs(32, 1)), s).has_value());
    }
}

TEST(Search, PerfectSuccessMatchesSinSquared) {
    const ProtocolConstants pc;
    SimCache cache;
    const std::size_t n = 64;
    const double theta = grover_angle(1, n);
    const double p = std::pow(std::sin(std::pow(3.0, iteration_count(theta)) * theta), 2);
    int hits = 0;
    const int trials = 4000;
    for (int t = 0; t < trials; ++t) {
        Rng rng(static_cast<std::uint64_t>(t));
        CostMeter m;
        Session s{rng, m, pc, NoiseModel::perfect(), Backend::Sector, nullptr, nullptr, &cache};
        hits += search_known_t(SearchInstance::planted(and2(), weight_string(n, {17})), 1, s).has_value();
    }
    EXPECT_NEAR(hits / double(trials), p, 3 * std::sqrt(p * (1 - p) / trials));
}

TEST(Search, UnknownFindsOnLargerInstance) {
    const ProtocolConstants pc;
    SimCache cache;
    int found = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Rng rng(seed);
        CostMeter m;
        Session s{rng, m, pc, NoiseModel::phase_on_complement(), Backend::Sector, nullptr, nullptr, &cache};
        found += search_unknown(SearchInstance::planted(and2(), weight_string(256, {5, 77, 200})), s).has_value();
    }
    EXPECT_GE(found, 196);
}

TEST(Search, EprPoolIsDrawnPerRun) {
    const ProtocolConstants pc;
    Rng rng(1);
    CostMeter m;
    EprPool pool(12);
    Session s{rng, m, pc, NoiseModel::perfect(), Backend::Sector, &pool};
    const auto inst = SearchInstance::planted(and2(), Signs(16, 1));
    search_known_t(inst, 1, s);
    search_known_t(inst, 1, s);
    search_known_t(inst, 1, s);
    EXPECT_EQ(pool.remaining(), 0u);
    EXPECT_EQ(m.epr_consumed, 12u);
    EXPECT_THROW(search_known_t(inst, 1, s), std::runtime_error);
}

TEST(Search, TranscriptRecordsMessages) {
    const ProtocolConstants pc;
    Rng rng(1);
    CostMeter m;
    Transcript log(true);
    Session s{rng, m, pc, NoiseModel::perfect(), Backend::Joint, nullptr, &log};
    search_known_t(SearchInstance::planted(and2(), weight_string(4, {2})), 1, s);
    std::size_t sends = 0;
    for (const auto& l : log.lines()) sends += l == "SEND 1";
    EXPECT_EQ(sends * 1, m.qubits_sent);
    EXPECT_GT(sends, 0u);
}
