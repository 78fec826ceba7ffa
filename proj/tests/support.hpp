#pragma once

#include <random>

#include "tcount/channel.hpp"
#include "tcount/circuit.hpp"

namespace tcount::testing {

/// Random circuit over the full gate set with an exact number of T/Tdg gates
/// and `clifford_per_segment` random Clifford gates between them.
inline Circuit random_circuit(std::mt19937& rng, unsigned n, unsigned t_gates,
                              unsigned clifford_per_segment = 4) {
    static const GateKind cliffords[] = {GateKind::H,   GateKind::S,    GateKind::Sdg,
                                         GateKind::X,   GateKind::Z,    GateKind::Cnot,
                                         GateKind::Swap};
    std::uniform_int_distribution<unsigned> qubit(1, n);
    std::uniform_int_distribution<std::size_t> pick(0, n >= 2 ? 6 : 4);
    std::uniform_int_distribution<int> coin(0, 1);

    Circuit c(n);
    auto push_clifford = [&] {
        GateKind kind = cliffords[pick(rng)];
        if (gate_is_two_qubit(kind)) {
            unsigned q1 = qubit(rng);
            unsigned q2 = qubit(rng);
            while (q2 == q1) q2 = qubit(rng);
            c.push(Gate(kind, q1, q2));
        } else {
            c.push(Gate(kind, qubit(rng)));
        }
    };
    for (unsigned seg = 0; seg <= t_gates; ++seg) {
        for (unsigned i = 0; i < clifford_per_segment; ++i) push_clifford();
        if (seg < t_gates) c.push(Gate(coin(rng) ? GateKind::T : GateKind::Tdg, qubit(rng)));
    }
    return c;
}

/// Random Clifford-only circuit.
inline Circuit random_clifford_circuit(std::mt19937& rng, unsigned n, unsigned gates) {
    Circuit c = random_circuit(rng, n, 0, gates);
    return c;
}

/// Random circuit over {H, T, CNOT} only (the generator set).
inline Circuit random_htc_circuit(std::mt19937& rng, unsigned n, unsigned gates) {
    std::uniform_int_distribution<unsigned> qubit(1, n);
    std::uniform_int_distribution<int> pick(0, n >= 2 ? 2 : 1);
    Circuit c(n);
    for (unsigned i = 0; i < gates; ++i) {
        switch (pick(rng)) {
            case 0: c.push(Gate(GateKind::H, qubit(rng))); break;
            case 1: c.push(Gate(GateKind::T, qubit(rng))); break;
            default: {
                unsigned q1 = qubit(rng);
                unsigned q2 = qubit(rng);
                while (q2 == q1) q2 = qubit(rng);
                c.push(Gate(GateKind::Cnot, q1, q2));
            }
        }
    }
    return c;
}

/// Exact Toffoli permutation matrix on (control, control, target).
inline UnitaryMatrix toffoli_matrix() {
    UnitaryMatrix u(3);
    for (std::uint32_t j = 0; j < 8; ++j) {
        std::uint32_t image = (j & 0b110) == 0b110 ? j ^ 1u : j;
        u.at(image, j) = CycloElem::one();
    }
    return u;
}

/// Exact Fredkin (controlled-SWAP) matrix on (control, target, target).
inline UnitaryMatrix fredkin_matrix() {
    UnitaryMatrix u(3);
    for (std::uint32_t j = 0; j < 8; ++j) {
        std::uint32_t image = j;
        if (j & 0b100) {
            std::uint32_t b1 = (j >> 1) & 1u;
            std::uint32_t b2 = j & 1u;
            image = (j & 0b100) | (b2 << 1) | b1;
        }
        u.at(image, j) = CycloElem::one();
    }
    return u;
}

}  // namespace tcount::testing
