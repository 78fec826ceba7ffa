#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcount {

enum class GateKind { H, T, S, Sdg, Tdg, X, Z, Cnot, Swap };

inline bool gate_is_two_qubit(GateKind kind) {
    return kind == GateKind::Cnot || kind == GateKind::Swap;
}

inline bool gate_is_clifford(GateKind kind) {
    return kind != GateKind::T && kind != GateKind::Tdg;
}

inline const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::T: return "T";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "Sdg";
        case GateKind::Tdg: return "Tdg";
        case GateKind::X: return "X";
        case GateKind::Z: return "Z";
        case GateKind::Cnot: return "CNOT";
        case GateKind::Swap: return "SWAP";
    }
    return "?";
}

/// One gate application. Qubit indices are 1-based; q2 is meaningful only
/// for two-qubit gates (control first for CNOT).
struct Gate {
    GateKind kind = GateKind::H;
    unsigned q1 = 1;
    unsigned q2 = 0;

    Gate() = default;
    Gate(GateKind kind_, unsigned q1_) : kind(kind_), q1(q1_) {}
    Gate(GateKind kind_, unsigned q1_, unsigned q2_) : kind(kind_), q1(q1_), q2(q2_) {}

    Gate inverse() const {
        switch (kind) {
            case GateKind::T: return Gate(GateKind::Tdg, q1);
            case GateKind::Tdg: return Gate(GateKind::T, q1);
            case GateKind::S: return Gate(GateKind::Sdg, q1);
            case GateKind::Sdg: return Gate(GateKind::S, q1);
            default: return *this;  // H, X, Z, CNOT, SWAP are involutions
        }
    }

    bool operator==(const Gate& o) const { return kind == o.kind && q1 == o.q1 && q2 == o.q2; }
};

/// Gate list in application order: gates[0] acts first, so as a matrix the
/// circuit is gates[last] * ... * gates[0].
struct Circuit {
    unsigned qubits = 1;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(unsigned n) : qubits(n) {}
    Circuit(unsigned n, std::vector<Gate> g) : qubits(n), gates(std::move(g)) {}

    void push(const Gate& g) {
        validate_gate(g);
        gates.push_back(g);
    }

    void append(const Circuit& other) {
        if (other.qubits != qubits) throw std::invalid_argument("Circuit: qubit count mismatch");
        for (const Gate& g : other.gates) push(g);
    }

    /// Gates of the inverse circuit: reversed order, each gate inverted.
    Circuit inverse() const {
        Circuit out(qubits);
        out.gates.reserve(gates.size());
        for (auto it = gates.rbegin(); it != gates.rend(); ++it) out.gates.push_back(it->inverse());
        return out;
    }

    unsigned t_gate_count() const {
        unsigned c = 0;
        for (const Gate& g : gates)
            if (g.kind == GateKind::T || g.kind == GateKind::Tdg) ++c;
        return c;
    }

    void validate_gate(const Gate& g) const {
        if (g.q1 < 1 || g.q1 > qubits) throw std::invalid_argument("Circuit: qubit index out of range");
        if (gate_is_two_qubit(g.kind)) {
            if (g.q2 < 1 || g.q2 > qubits) throw std::invalid_argument("Circuit: qubit index out of range");
            if (g.q2 == g.q1) throw std::invalid_argument("Circuit: two-qubit gate needs distinct qubits");
        }
    }

    void validate() const {
        for (const Gate& g : gates) validate_gate(g);
    }
};

}  // namespace tcount
