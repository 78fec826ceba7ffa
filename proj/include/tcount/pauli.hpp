#pragma once

#include <bit>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcount {

/// n-qubit Pauli operator modulo phase, in symplectic (x, z) bit form:
/// the operator is (a phase times) the tensor product over qubits of
/// X^{x_i} Z^{z_i}. Qubits are 1-based; qubit i lives at bit (n - i), so for
/// n = 1 the index order is I, X, Y, Z and qubit 1 is the most significant
/// digit of the index for n > 1. Bit layout matches state-vector indices,
/// where qubit 1 is the most significant bit.
class Pauli {
  public:
    static constexpr unsigned kMaxQubits = 16;

    Pauli() = default;

    Pauli(unsigned n, std::uint32_t x, std::uint32_t z) : n_(n), x_(x), z_(z) {
        check_qubits(n);
        std::uint32_t mask = bitmask(n);
        if ((x & ~mask) != 0 || (z & ~mask) != 0)
            throw std::invalid_argument("Pauli: bits outside qubit range");
    }

    static Pauli identity(unsigned n) {
        check_qubits(n);
        return Pauli(n, 0, 0);
    }

    /// letter: 'I', 'X', 'Y' or 'Z', placed on 1-based `qubit`.
    static Pauli single(unsigned n, unsigned qubit, char letter) {
        check_qubits(n);
        if (qubit < 1 || qubit > n) throw std::invalid_argument("Pauli: qubit out of range");
        std::uint32_t bit = 1u << (n - qubit);
        switch (letter) {
            case 'I': return Pauli(n, 0, 0);
            case 'X': return Pauli(n, bit, 0);
            case 'Y': return Pauli(n, bit, bit);
            case 'Z': return Pauli(n, 0, bit);
            default: throw std::invalid_argument("Pauli: unknown letter");
        }
    }

    /// Bijection with [0, 4^n): per-qubit digits I=0, X=1, Y=2, Z=3, with
    /// qubit 1 the most significant digit. Index 0 is the identity.
    std::uint32_t index() const {
        std::uint32_t idx = 0;
        for (unsigned bit = n_; bit-- > 0;) {
            std::uint32_t xb = (x_ >> bit) & 1u;
            std::uint32_t zb = (z_ >> bit) & 1u;
            std::uint32_t digit = zb ? (xb ? 2u : 3u) : xb;
            idx = (idx << 2) | digit;
        }
        return idx;
    }

    static Pauli from_index(unsigned n, std::uint32_t index) {
        check_qubits(n);
        if (index >= (1u << (2 * n))) throw std::invalid_argument("Pauli: index out of range");
        std::uint32_t x = 0;
        std::uint32_t z = 0;
        for (unsigned bit = 0; bit < n; ++bit) {
            std::uint32_t digit = (index >> (2 * bit)) & 3u;
            if (digit == 1u || digit == 2u) x |= 1u << bit;
            if (digit == 2u || digit == 3u) z |= 1u << bit;
        }
        return Pauli(n, x, z);
    }

    unsigned qubits() const { return n_; }
    std::uint32_t x_bits() const { return x_; }
    std::uint32_t z_bits() const { return z_; }
    bool is_identity() const { return x_ == 0 && z_ == 0; }

    char letter_at(unsigned qubit) const {
        if (qubit < 1 || qubit > n_) throw std::invalid_argument("Pauli: qubit out of range");
        unsigned bit = n_ - qubit;
        bool xb = (x_ >> bit) & 1u;
        bool zb = (z_ >> bit) & 1u;
        if (xb && zb) return 'Y';
        if (xb) return 'X';
        if (zb) return 'Z';
        return 'I';
    }

    /// Number of qubits carrying a Y letter; the operator equals
    /// i^weight_y * (tensor of X^{x_i} Z^{z_i}).
    unsigned weight_y() const { return static_cast<unsigned>(std::popcount(x_ & z_)); }

    bool commutes(const Pauli& o) const {
        require_same_n(o);
        unsigned s = std::popcount(x_ & o.z_) + std::popcount(z_ & o.x_);
        return (s % 2) == 0;
    }

    bool operator==(const Pauli& o) const { return n_ == o.n_ && x_ == o.x_ && z_ == o.z_; }
    bool operator!=(const Pauli& o) const { return !(*this == o); }

    /// One letter per qubit, qubit 1 leftmost, e.g. "XIZ".
    std::string name() const {
        std::string s;
        s.reserve(n_);
        for (unsigned q = 1; q <= n_; ++q) s.push_back(letter_at(q));
        return s;
    }

    void require_same_n(const Pauli& o) const {
        if (n_ != o.n_) throw std::invalid_argument("Pauli: qubit count mismatch");
    }

  private:
    static void check_qubits(unsigned n) {
        if (n < 1 || n > kMaxQubits) throw std::invalid_argument("Pauli: unsupported qubit count");
    }

    static std::uint32_t bitmask(unsigned n) {
        return n >= 32 ? ~0u : ((1u << n) - 1u);
    }

    unsigned n_ = 1;
    std::uint32_t x_ = 0;
    std::uint32_t z_ = 0;
};

/// Pauli together with a sign in {+1, -1}. Channel-representation rows are
/// real, so this is the only phase that ever escapes the algebra.
struct SignedPauli {
    Pauli pauli;
    int sign = 1;

    bool operator==(const SignedPauli& o) const { return sign == o.sign && pauli == o.pauli; }
    bool operator!=(const SignedPauli& o) const { return !(*this == o); }

    std::string name() const { return (sign < 0 ? "-" : "+") + pauli.name(); }
};

/// Product of two Paulis with the full i^phase_power tracked (phase_power in
/// Z4). Callers that require a real result assert the phase via sign().
struct PauliProduct {
    Pauli pauli;
    unsigned phase_power = 0;  // product = i^phase_power * pauli

    /// Sign of a product known to be real; throws if the phase is +/-i,
    /// which signals a logic error at the call site.
    int sign() const {
        if (phase_power == 0) return 1;
        if (phase_power == 2) return -1;
        throw std::logic_error("PauliProduct: non-real phase where a sign was required");
    }
};

/// p * q with Y = i X Z as the letter convention. The per-qubit phases add:
/// i^(y_p + y_q + 2*<z_p, x_q> - y_pq).
inline PauliProduct pauli_mul(const Pauli& p, const Pauli& q) {
    p.require_same_n(q);
    std::uint32_t x = p.x_bits() ^ q.x_bits();
    std::uint32_t z = p.z_bits() ^ q.z_bits();
    Pauli out(p.qubits(), x, z);
    unsigned t = p.weight_y() + q.weight_y() + 2u * static_cast<unsigned>(std::popcount(p.z_bits() & q.x_bits()));
    t += 4u * Pauli::kMaxQubits - out.weight_y();
    return PauliProduct{out, t % 4u};
}

inline PauliProduct pauli_mul(const SignedPauli& p, const SignedPauli& q) {
    PauliProduct r = pauli_mul(p.pauli, q.pauli);
    if (p.sign * q.sign < 0) r.phase_power = (r.phase_power + 2u) % 4u;
    return r;
}

/// All 4^n - 1 non-identity Paulis in index order.
inline std::vector<Pauli> enumerate_nonidentity(unsigned n) {
    std::uint32_t total = 1u << (2 * n);
    std::vector<Pauli> out;
    out.reserve(total - 1);
    for (std::uint32_t idx = 1; idx < total; ++idx) out.push_back(Pauli::from_index(n, idx));
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Pauli& p) { return os << p.name(); }
inline std::ostream& operator<<(std::ostream& os, const SignedPauli& p) { return os << p.name(); }

}  // namespace tcount
