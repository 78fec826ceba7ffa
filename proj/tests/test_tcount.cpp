#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tcount/tcount.hpp"

using namespace tcount;
using namespace tcount::testing;

namespace {

const DatabaseSet& dbs1() {
    static DatabaseSet dbs = generate_databases(1, 4);
    return dbs;
}

const DatabaseSet& dbs2() {
    static DatabaseSet dbs = generate_databases(2, 2);
    return dbs;
}

void check_witness(const ChannelRep& u, const TCountResult& res) {
    REQUIRE(res.decided());
    REQUIRE(res.witness.has_value());
    CHECK(res.witness->rotations_w.size() + res.witness->rotations_v.size() == *res.tcount);
    CHECK(res.witness->recompose(u.qubits()) == u);
}

}  // namespace

TEST_CASE("identity has T-count 0") {
    for (std::uint32_t m : {0u, 1u, 4u}) {
        TCountResult res = count_t(ChannelRep::identity(1), m, dbs1());
        REQUIRE(res.decided());
        CHECK(*res.tcount == 0);
        check_witness(ChannelRep::identity(1), res);
    }
    TCountResult naive = count_t_naive(ChannelRep::identity(2), 2);
    REQUIRE(naive.decided());
    CHECK(*naive.tcount == 0);
}

TEST_CASE("the T gate has T-count 1") {
    ChannelRep t = ChannelRep::from_matrix(gate_matrix(GateKind::T));
    for (std::uint32_t m : {1u, 3u, 8u}) {
        TCountResult res = count_t(t, m, dbs1());
        REQUIRE(res.decided());
        CHECK(*res.tcount == 1);
        check_witness(t, res);
    }
    TCountResult naive = count_t_naive(t, 1);
    REQUIRE(naive.decided());
    CHECK(*naive.tcount == 1);
    CHECK(tcount_single_qubit(t) == 1);
}

TEST_CASE("verdicts are sound upper bounds and match the naive oracle") {
    std::mt19937 rng(9001);
    int done = 0;
    while (done < 60) {
        unsigned n = 1 + (done % 2);
        unsigned t_gates = done % 5;
        if (n == 2 && t_gates > 4) continue;
        Circuit c = random_circuit(rng, n, t_gates, 2);
        ChannelRep u = ChannelRep::from_circuit(c);
        std::uint32_t m = n == 1 ? 8 : 4;
        TCountResult fast = count_t(u, m, n == 1 ? dbs1() : dbs2());
        TCountResult naive = count_t_naive(u, std::min(m, 4u));
        REQUIRE(fast.decided());
        CHECK(*fast.tcount <= t_gates);
        REQUIRE(naive.decided());
        CHECK(*fast.tcount == *naive.tcount);
        check_witness(u, fast);
        ++done;
    }
}

TEST_CASE("single-qubit theorem: T-count equals the channel sde") {
    std::mt19937 rng(9002);
    for (int i = 0; i < 200; ++i) {
        Circuit c = random_circuit(rng, 1, i % 9, 2);
        ChannelRep u = ChannelRep::from_circuit(c);
        TCountResult res = count_t(u, 8, dbs1());
        REQUIRE(res.decided());
        CHECK(*res.tcount == tcount_single_qubit(u));
    }
}

TEST_CASE("greater-than verdicts") {
    // three independent rotations on one qubit
    ChannelRep deep = ChannelRep::identity(1);
    for (char l : {'Z', 'X', 'Z'}) deep = deep.rotated_left(Pauli::single(1, 1, l));
    CHECK(tcount_single_qubit(deep) == 3);

    TCountResult res = count_t(deep, 2, dbs1());
    CHECK_FALSE(res.decided());
    CHECK(res.max_m == 2);
    TCountResult naive = count_t_naive(deep, 2);
    CHECK_FALSE(naive.decided());

    TCountResult res3 = count_t(deep, 3, dbs1());
    REQUIRE(res3.decided());
    CHECK(*res3.tcount == 3);
}

TEST_CASE("surplus strata are ignored but do not change verdicts") {
    ChannelRep deep = ChannelRep::identity(1);
    for (char l : {'Z', 'X', 'Z'}) deep = deep.rotated_left(Pauli::single(1, 1, l));
    // K = 4 databases, m = 2: even though D_3 holds this coset, the verdict
    // stays "greater than 2".
    TCountResult res = count_t(deep, 2, dbs1());
    CHECK_FALSE(res.decided());
}

TEST_CASE("count_t works with fewer strata via the on-the-fly top level") {
    // A T-count-3 unitary decided with strata only up to K = 1 (m = 3 = 2K+1).
    DatabaseSet small = generate_databases(1, 1);
    ChannelRep deep = ChannelRep::identity(1);
    for (char l : {'Z', 'X', 'Z'}) deep = deep.rotated_left(Pauli::single(1, 1, l));
    TCountResult res = count_t(deep, 3, small);
    REQUIRE(res.decided());
    CHECK(*res.tcount == 3);
    check_witness(deep, res);

    // m beyond 2K+1 must name the missing stratum
    CHECK_THROWS_WITH_AS(count_t(deep, 4, small, 1),
                         doctest::Contains("stratum 2"), std::invalid_argument);
}

TEST_CASE("T-count is invariant under Clifford multiplication on either side") {
    std::mt19937 rng(9003);
    for (int i = 0; i < 40; ++i) {
        unsigned n = 1 + (i % 2);
        const DatabaseSet& dbs = n == 1 ? dbs1() : dbs2();
        std::uint32_t m = 4;
        ChannelRep u = ChannelRep::from_circuit(random_circuit(rng, n, i % 4, 2));
        ChannelRep c1 = ChannelRep::from_circuit(random_clifford_circuit(rng, n, 10));
        ChannelRep c2 = ChannelRep::from_circuit(random_clifford_circuit(rng, n, 10));
        TCountResult base = count_t(u, m, dbs);
        TCountResult wrapped = count_t(c1 * u * c2, m, dbs);
        REQUIRE(base.decided());
        REQUIRE(wrapped.decided());
        CHECK(*base.tcount == *wrapped.tcount);
    }
}

TEST_CASE("parallel search agrees with serial") {
    std::mt19937 rng(9004);
    for (int i = 0; i < 15; ++i) {
        ChannelRep u = ChannelRep::from_circuit(random_circuit(rng, 2, 2 + (i % 3), 2));
        TCountResult serial = count_t(u, 4, dbs2(), 1);
        TCountResult parallel = count_t(u, 4, dbs2(), 4);
        REQUIRE(serial.decided() == parallel.decided());
        if (serial.decided()) {
            CHECK(*serial.tcount == *parallel.tcount);
            REQUIRE(serial.witness.has_value());
            REQUIRE(parallel.witness.has_value());
            CHECK(serial.witness->rotations_w == parallel.witness->rotations_w);
            CHECK(serial.witness->rotations_v == parallel.witness->rotations_v);
        }
    }
}

TEST_CASE("the naive oracle guards its enumeration size") {
    CHECK_THROWS_AS(count_t_naive(ChannelRep::identity(3), 5), std::invalid_argument);
}

TEST_CASE("qubit mismatch is rejected") {
    CHECK_THROWS_AS(count_t(ChannelRep::identity(2), 1, dbs1()), std::invalid_argument);
    CHECK_THROWS_AS(tcount_single_qubit(ChannelRep::identity(2)), std::invalid_argument);
}
