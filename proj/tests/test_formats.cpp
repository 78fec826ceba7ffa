#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tcount/formats.hpp"

using namespace tcount;
using namespace tcount::testing;

TEST_CASE("circuit text round-trips") {
    std::mt19937 rng(12001);
    for (int i = 0; i < 40; ++i) {
        unsigned n = 1 + (i % 3);
        Circuit c = random_circuit(rng, n, i % 4, 3);
        Circuit back = parse_circuit(print_circuit(c), n);
        CHECK(back.qubits == c.qubits);
        REQUIRE(back.gates.size() == c.gates.size());
        for (std::size_t g = 0; g < c.gates.size(); ++g) CHECK(back.gates[g] == c.gates[g]);
    }
}

TEST_CASE("circuit parsing: comments, case, qubit inference") {
    Circuit c = parse_circuit("# leading comment\n\n  h 1   # trailing\nCNOT 1 3\nsdg 2\n");
    CHECK(c.qubits == 3);
    REQUIRE(c.gates.size() == 3);
    CHECK(c.gates[0] == Gate(GateKind::H, 1));
    CHECK(c.gates[1] == Gate(GateKind::Cnot, 1, 3));
    CHECK(c.gates[2] == Gate(GateKind::Sdg, 2));
}

TEST_CASE("circuit parse errors carry positions") {
    try {
        parse_circuit("H 1\nFOO 2\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 1);
    }
    try {
        parse_circuit("CNOT 1\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
    }
    CHECK_THROWS_AS(parse_circuit("H 0\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("CNOT 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_circuit("H 3\n", 2), ParseError);
    CHECK_THROWS_AS(parse_circuit("H 1 2\n"), ParseError);
}

TEST_CASE("matrix text round-trips the Toffoli") {
    UnitaryMatrix toff = toffoli_matrix();
    UnitaryMatrix back = parse_matrix(print_matrix(toff));
    CHECK(back == toff);
}

TEST_CASE("matrix text round-trips ring entries exactly") {
    std::mt19937 rng(12002);
    for (int i = 0; i < 20; ++i) {
        Circuit c = random_circuit(rng, 2, i % 4, 2);
        UnitaryMatrix u = unitary_from_circuit(c);
        CHECK(parse_matrix(print_matrix(u)) == u);
    }
}

TEST_CASE("matrix parse errors") {
    CHECK_THROWS_AS(parse_matrix("H 1\n"), ParseError);
    CHECK_THROWS_AS(parse_matrix("unitary n=x\n"), ParseError);
    // wrong entry arity
    CHECK_THROWS_AS(parse_matrix("unitary n=1\n1,0,0,0 0,0,0,0,0\n0,0,0,0,0 1,0,0,0,0\n"),
                    ParseError);
    // decimals are rejected: exactness demands integers
    try {
        parse_matrix("unitary n=1\n0.5,0,0,0,0 0,0,0,0,0\n0,0,0,0,0 1,0,0,0,0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("integer") != std::string::npos);
    }
    // truncated row set
    CHECK_THROWS_AS(parse_matrix("unitary n=1\n1,0,0,0,0 0,0,0,0,0\n"), ParseError);
}

TEST_CASE("input kind detection") {
    CHECK(detect_input_kind("# c\nunitary n=1\n...") == InputKind::MatrixText);
    CHECK(detect_input_kind("H 1\n") == InputKind::CircuitText);
    CHECK(detect_input_kind("") == InputKind::CircuitText);
}

TEST_CASE("transcribed Toffoli and Fredkin circuits are exact") {
    std::string toff_text = read_text_file(std::string(TCOUNT_TEST_DATA_DIR) + "/toffoli7.circuit");
    Circuit toff = parse_circuit(toff_text, 3);
    CHECK(toff.t_gate_count() == 7);
    CHECK(ChannelRep::from_circuit(toff) == ChannelRep::from_matrix(toffoli_matrix()));

    std::string fred_text = read_text_file(std::string(TCOUNT_TEST_DATA_DIR) + "/fredkin7.circuit");
    Circuit fred = parse_circuit(fred_text, 3);
    CHECK(fred.t_gate_count() == 7);
    CHECK(ChannelRep::from_circuit(fred) == ChannelRep::from_matrix(fredkin_matrix()));
}
