#include <gtest/gtest.h>

#include "qcc/runtime.hpp"

using namespace qcc;

TEST(TwoPartyState, SharedStartDrawsEpr) {
    EprPool pool(5);
    auto st = TwoPartyState::init_shared(8, pool);
    EXPECT_EQ(st.meter().epr_consumed, 3u);
    EXPECT_EQ(pool.remaining(), 2u);
    EXPECT_EQ(st.meter().qubits_sent, 0u);
    EXPECT_THROW(TwoPartyState::init_shared(8, pool), std::runtime_error);
}

TEST(TwoPartyState, OwnershipIsEnforced) {
    auto st = TwoPartyState::product(4);
    EXPECT_THROW(st.local(Party::Alice, UnitaryOp::hadamard(2)), std::logic_error);
    EXPECT_NO_THROW(st.local(Party::Bob, UnitaryOp::hadamard(2)));
    EXPECT_THROW(st.local(Party::Alice, UnitaryOp::reflection(st.joint())), std::logic_error);
}

TEST(TwoPartyState, SendMovesOwnershipAndCharges) {
    auto st = TwoPartyState::product(4);
    const int aux = st.add_qubit(Party::Alice);
    st.send({aux}, Party::Bob);
    EXPECT_EQ(st.meter().qubits_sent, 1u);
    EXPECT_EQ(st.owner()[static_cast<std::size_t>(aux)], Party::Bob);
    EXPECT_THROW(st.send({aux}, Party::Bob), std::logic_error);
    st.send({aux}, Party::Alice);
    EXPECT_EQ(st.meter().total(), 2u);
    st.release_last_qubit();
    EXPECT_EQ(st.joint().dim(), 16u);
}

TEST(TwoPartyState, ReleaseRequiresCleanAuxiliary) {
    auto st = TwoPartyState::product(2);
    const int aux = st.add_qubit(Party::Alice);
    st.local(Party::Alice, UnitaryOp::hadamard(aux));
    EXPECT_THROW(st.release_last_qubit(), std::logic_error);
}

TEST(TwoPartyState, JointOpsNeedRegistration) {
    auto st = TwoPartyState::product(2);
    JointRegistry reg = JointRegistry::standard();
    EXPECT_THROW(st.joint(reg, "teleport", 1, [](CVec&) {}), std::logic_error);
    bool ran = false;
    st.joint(reg, "oracle_G", 4, [&](CVec&) { ran = true; });
    EXPECT_TRUE(ran);
    EXPECT_EQ(st.meter().charged("oracle_G"), 4u);
    EXPECT_EQ(st.meter().total(), 4u);
}

TEST(TwoPartyState, MeasuringBellPairAgrees) {
    Rng rng(1);
    for (int t = 0; t < 50; ++t) {
        auto st = TwoPartyState::init_shared(4, 100);
        const auto a = st.measure(Party::Alice, st.alice_register(), rng);
        const auto b = st.measure(Party::Bob, st.bob_register(), rng);
        EXPECT_EQ(a, b);
    }
}

TEST(CostMeter, SharedRandomnessIsNotCommunication) {
    CostMeter m;
    Rng rng(2);
    SharedCoins coins(rng, m);
    coins.bits(10);
    EXPECT_EQ(m.shared_random_bits, 10u);
    EXPECT_EQ(m.total(), 0u);
    CostMeter n;
    n.qubits_sent = 3;
    n.charge("x", 2);
    m += n;
    m += n;
    EXPECT_EQ(m.total(), 10u);
    EXPECT_EQ(m.charged("x"), 4u);
}

TEST(SharedCoins, SubsetIsSortedAndDistinct) {
    CostMeter m;
    Rng rng(9);
    SharedCoins coins(rng, m);
    for (int t = 0; t < 100; ++t) {
        const auto s = coins.subset(20, 7);
        ASSERT_EQ(s.size(), 7u);
        for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LT(s[i - 1], s[i]);
        EXPECT_LT(s.back(), 20u);
    }
    EXPECT_THROW(coins.subset(3, 4), std::invalid_argument);
}

TEST(Transcript, DisabledKeepsNothing) {
    Transcript off, on(true);
    off.send(2);
    on.send(2);
    on.charge("approx_reflection", 11);
    EXPECT_TRUE(off.lines().empty());
    EXPECT_EQ(on.lines(), (std::vector<std::string>{"SEND 2", "CHARGE approx_reflection 11"}));
}

TEST(ReflectionCost, AffineInLogInverseEps) {
    const ReflectionCost c;
    EXPECT_EQ(c(1.0 / 400), 11u);  // ceil(log2 400) = 9
    EXPECT_EQ(c(1.0 / 1024), 12u);  // exact power of two
    EXPECT_EQ((ReflectionCost{3, 0})(0.25), 6u);
    EXPECT_THROW(c(0.0), std::invalid_argument);
}
