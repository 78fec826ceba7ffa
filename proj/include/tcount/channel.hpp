#pragma once

#include <cstdint>
#include <vector>

#include "tcount/circuit.hpp"
#include "tcount/pauli.hpp"
#include "tcount/ring.hpp"

namespace tcount {

/// Exact n-qubit unitary with entries in Z[omega, 1/sqrt(2)], dense row-major.
/// Input carrier for channel representations and membership checks.
class UnitaryMatrix {
  public:
    UnitaryMatrix() = default;
    explicit UnitaryMatrix(unsigned n);

    static UnitaryMatrix identity(unsigned n);

    unsigned qubits() const { return n_; }
    std::uint32_t dim() const { return dim_; }

    const CycloElem& at(std::uint32_t r, std::uint32_t c) const { return m_[r * dim_ + c]; }
    CycloElem& at(std::uint32_t r, std::uint32_t c) { return m_[r * dim_ + c]; }

    UnitaryMatrix operator*(const UnitaryMatrix& o) const;
    UnitaryMatrix dagger() const;
    bool is_unitary() const;

    bool operator==(const UnitaryMatrix& o) const { return n_ == o.n_ && m_ == o.m_; }
    bool operator!=(const UnitaryMatrix& o) const { return !(*this == o); }

  private:
    unsigned n_ = 0;
    std::uint32_t dim_ = 0;
    std::vector<CycloElem> m_;
};

/// Exact matrix of a gate on its own qubits (2x2 or 4x4).
UnitaryMatrix gate_matrix(GateKind kind);

/// Exact matrix of a full circuit (dim 2^n). Gates are applied in circuit
/// order; the result is the plain matrix product, global phase included.
UnitaryMatrix unitary_from_circuit(const Circuit& circuit);

struct ChannelEntry {
    std::uint32_t col = 0;
    RingReal value;

    bool operator==(const ChannelEntry& o) const { return col == o.col && value == o.value; }
};

using SparseRow = std::vector<ChannelEntry>;  // sorted by column, no explicit zeros

/// Channel representation: the N^2 x N^2 real orthogonal matrix over
/// Z[1/sqrt(2)] describing conjugation action on the Pauli basis,
///   entry(r, s) = (1/2^n) Tr(P_r U P_s U^dag),
/// rows and columns indexed by Pauli index (row 0 = identity Pauli).
/// Stored row-sparse; immutable after construction.
class ChannelRep {
  public:
    ChannelRep() = default;

    static ChannelRep identity(unsigned n);

    /// Channel representation of the rotation R(P) = exp(i*pi/8 (I - P)).
    /// Rows of Paulis commuting with the axis are unit vectors; an
    /// anticommuting row Q becomes (row_Q - sign * row_{QP}) / sqrt(2).
    static ChannelRep rotation(const Pauli& axis);

    /// Exact construction from the defining trace formula. Rejects
    /// non-unitary input; every entry is verified real.
    static ChannelRep from_matrix(const UnitaryMatrix& u);

    /// Product of the per-gate channel representations in circuit order.
    /// Base gate reps are built from their exact matrices once and embedded
    /// by qubit index.
    static ChannelRep from_circuit(const Circuit& circuit);

    unsigned qubits() const { return n_; }
    std::uint32_t dim() const { return dim_; }
    const SparseRow& row(std::uint32_t r) const { return rows_[r]; }

    RingReal entry(std::uint32_t r, std::uint32_t c) const;

    ChannelRep operator*(const ChannelRep& o) const;

    /// Adjoint; entries are real so this is the transpose.
    ChannelRep transpose() const;

    /// this^T * o without materializing the transpose.
    ChannelRep transposed_times(const ChannelRep& o) const;

    /// R(axis)-hat * this via paired row combinations (the database
    /// generation hot path).
    ChannelRep rotated_left(const Pauli& axis) const;

    /// R(axis)-hat^T * this (used when peeling rotations off the left).
    ChannelRep rotated_left_inverse(const Pauli& axis) const;

    /// Largest smallest-denominator-exponent over all entries.
    std::uint32_t sde() const;

    bool operator==(const ChannelRep& o) const { return n_ == o.n_ && rows_ == o.rows_; }
    bool operator!=(const ChannelRep& o) const { return !(*this == o); }

    /// Construct from prebuilt rows (entries must be column-sorted,
    /// canonical, with no explicit zeros).
    static ChannelRep from_rows(unsigned n, std::vector<SparseRow> rows);

  private:
    ChannelRep(unsigned n, std::vector<SparseRow> rows);

    ChannelRep rotate_impl(const Pauli& axis, bool inverse) const;

    unsigned n_ = 0;
    std::uint32_t dim_ = 0;
    std::vector<SparseRow> rows_;
};

}  // namespace tcount
