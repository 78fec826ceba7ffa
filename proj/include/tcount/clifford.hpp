#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcount/channel.hpp"
#include "tcount/circuit.hpp"
#include "tcount/pauli.hpp"

namespace tcount {

/// Clifford element described by the conjugation images of the 2n Pauli
/// generators X_(i), Z_(i). Signs are always exactly +/-1.
class CliffordTableau {
  public:
    CliffordTableau() = default;
    CliffordTableau(unsigned n, std::vector<SignedPauli> img_x, std::vector<SignedPauli> img_z);

    static CliffordTableau identity(unsigned n);

    unsigned qubits() const { return n_; }
    const SignedPauli& image_x(unsigned qubit) const { return img_x_.at(qubit - 1); }
    const SignedPauli& image_z(unsigned qubit) const { return img_z_.at(qubit - 1); }

    /// Conjugation image of an arbitrary signed Pauli, computed by expanding
    /// it over the generators. The internal Z4 phase must land on +/-1.
    SignedPauli apply(const SignedPauli& p) const;
    SignedPauli apply(const Pauli& p) const { return apply(SignedPauli{p, 1}); }

    /// Tableau of the product this * other (this applied after other).
    CliffordTableau then_after(const CliffordTableau& other) const;

    /// The monomial channel representation induced by this tableau.
    ChannelRep to_channel() const;

    /// True when the images preserve all commutation relations.
    bool is_symplectic() const;

    bool operator==(const CliffordTableau& o) const {
        return n_ == o.n_ && img_x_ == o.img_x_ && img_z_ == o.img_z_;
    }
    bool operator!=(const CliffordTableau& o) const { return !(*this == o); }

  private:
    unsigned n_ = 0;
    std::vector<SignedPauli> img_x_;
    std::vector<SignedPauli> img_z_;
};

/// Tableau of a single Clifford gate; throws for T and Tdg.
CliffordTableau gate_tableau(const Gate& g, unsigned n);

/// Tableau of a Clifford circuit (composition of gate tableaus).
CliffordTableau tableau_from_circuit(const Circuit& circuit);

/// Recognizes Clifford channel representations: returns the tableau when the
/// matrix is monomial with entries +/-1, nothing otherwise. This is the
/// T-count-0 test.
std::optional<CliffordTableau> is_clifford(const ChannelRep& w);

/// Synthesizes a circuit over {H, S, CNOT} whose channel representation
/// equals the monomial channel representation of the tableau exactly.
Circuit synthesize_clifford(const CliffordTableau& tableau);

/// Clifford circuit C with C * from * C^dag == + to exactly, built by routing
/// both Paulis through Z on qubit 1 (CNOT/SWAP fan-out, then H / SH letter
/// changes per qubit).
Circuit pauli_conjugator(const Pauli& from, const Pauli& to);

struct MembershipReport {
    bool member = false;
    std::string detail;
};

/// Checks that a unitary with entries in Z[omega, 1/sqrt(2)] is a Clifford+T
/// unitary: exact unitarity plus the determinant condition
/// det U = exp(i pi N r / 8) for some r in [8] (det U = 1 once n >= 4).
MembershipReport check_membership(const UnitaryMatrix& u);

}  // namespace tcount
