#pragma once

#include <vector>

#include "tcount/channel.hpp"
#include "tcount/circuit.hpp"
#include "tcount/clifford.hpp"
#include "tcount/coset.hpp"

namespace tcount {

/// Product of signed Pauli rotations times a trailing Clifford:
///   R(rotations[t-1]) * ... * R(rotations[0]) * trailing,
/// i.e. index 0 is the rightmost rotation factor.
struct RotationSequence {
    std::vector<SignedPauli> rotations;
    CliffordTableau trailing;

    /// Exact channel representation of the product.
    ChannelRep to_channel() const;
};

/// Tableau of exp(i*pi/4 * Q) modulo global phase (a Clifford for any
/// non-identity Pauli Q): commuting Paulis are fixed, anticommuting P maps
/// to -i P Q.
CliffordTableau quarter_turn_tableau(const Pauli& q);

/// Rewrites every R(-Q) factor as R(Q) times a Clifford, pushing the
/// Clifford right through the remaining rotations into the trailing tableau.
/// The represented channel and the sequence length are unchanged; all signs
/// come out +1.
RotationSequence normalize_signs(const RotationSequence& seq);

/// Builds a provably T-optimal circuit over {H, T, CNOT} (plus S/Sdg/SWAP
/// conveniences) for U-hat: peels rotations R(Q) with T(R(Q)^dag U) = t - 1
/// one at a time, synthesizes the Clifford residue, and expands each
/// rotation as C^dag T_(1) C via a Pauli conjugator. The result has exactly
/// T(U) T gates and its channel representation equals U-hat bit-exactly.
/// Requires count_t(u, max_m, dbs) to decide; throws std::invalid_argument
/// when T(U) > max_m.
Circuit extract_optimal_circuit(const ChannelRep& u, const DatabaseSet& dbs, std::uint32_t max_m,
                                unsigned threads = 1);

}  // namespace tcount
