#include "tcount/synth.hpp"

#include <stdexcept>

#include "tcount/tcount.hpp"

namespace tcount {

ChannelRep RotationSequence::to_channel() const {
    ChannelRep acc = trailing.to_channel();
    for (const SignedPauli& r : rotations) {
        if (r.sign > 0) {
            acc = acc.rotated_left(r.pauli);
        } else {
            // R(-Q)-hat = R(Q)-hat * exp(i pi/4 Q)-hat.
            acc = quarter_turn_tableau(r.pauli).to_channel() * acc;
            acc = acc.rotated_left(r.pauli);
        }
    }
    return acc;
}

CliffordTableau quarter_turn_tableau(const Pauli& q) {
    if (q.is_identity()) throw std::invalid_argument("quarter_turn_tableau: identity Pauli");
    const unsigned n = q.qubits();
    std::vector<SignedPauli> xs, zs;
    xs.reserve(n);
    zs.reserve(n);
    auto image = [&](const Pauli& g) -> SignedPauli {
        if (g.commutes(q)) return SignedPauli{g, 1};
        // exp(i pi/4 Q) g exp(-i pi/4 Q) = -i g Q for anticommuting g.
        PauliProduct prod = pauli_mul(g, q);
        unsigned phase = (prod.phase_power + 3u) % 4u;  // times -i = i^3
        if (phase != 0 && phase != 2)
            throw std::logic_error("quarter_turn_tableau: non-real image phase");
        return SignedPauli{prod.pauli, phase == 0 ? 1 : -1};
    };
    for (unsigned qq = 1; qq <= n; ++qq) {
        xs.push_back(image(Pauli::single(n, qq, 'X')));
        zs.push_back(image(Pauli::single(n, qq, 'Z')));
    }
    return CliffordTableau(n, std::move(xs), std::move(zs));
}

RotationSequence normalize_signs(const RotationSequence& seq) {
    RotationSequence out = seq;
    // Walk from the leftmost factor down; flipping index j only disturbs
    // indices below it, which the descending loop still visits.
    for (std::size_t j = out.rotations.size(); j-- > 0;) {
        if (out.rotations[j].sign > 0) continue;
        out.rotations[j].sign = 1;
        CliffordTableau push = quarter_turn_tableau(out.rotations[j].pauli);
        for (std::size_t i = j; i-- > 0;) {
            SignedPauli img = push.apply(out.rotations[i].pauli);
            out.rotations[i].pauli = img.pauli;
            out.rotations[i].sign *= img.sign;
        }
        out.trailing = push.then_after(out.trailing);
    }
    return out;
}

Circuit extract_optimal_circuit(const ChannelRep& u, const DatabaseSet& dbs, std::uint32_t max_m,
                                unsigned threads) {
    const unsigned n = u.qubits();
    TCountResult counted = count_t(u, max_m, dbs, threads);
    if (!counted.decided())
        throw std::invalid_argument("extract_optimal_circuit: T-count exceeds max_m");
    const std::uint32_t t = *counted.tcount;

    // Witness rotations seed the peel order; the leftmost factor (last in
    // the combined right-to-left list) peels first.
    std::vector<Pauli> seed;
    if (counted.witness) {
        for (std::uint32_t idx : counted.witness->rotations_v)
            seed.push_back(Pauli::from_index(n, idx));
        for (std::uint32_t idx : counted.witness->rotations_w)
            seed.push_back(Pauli::from_index(n, idx));
    }

    const std::vector<Pauli> paulis = enumerate_nonidentity(n);
    std::vector<Pauli> peeled;  // leftmost factor first
    ChannelRep residual = u;
    for (std::uint32_t step = 0; step < t; ++step) {
        const std::uint32_t remaining = t - step - 1;
        bool found = false;
        auto try_peel = [&](const Pauli& q) {
            ChannelRep candidate = residual.rotated_left_inverse(q);
            TCountResult probe = count_t(candidate, remaining, dbs, threads);
            if (!probe.decided()) return false;
            peeled.push_back(q);
            residual = std::move(candidate);
            return true;
        };
        if (!seed.empty()) {
            Pauli q = seed.back();
            seed.pop_back();
            found = try_peel(q);
        }
        if (!found) {
            seed.clear();  // stale seed; fall back to enumeration order
            for (const Pauli& q : paulis) {
                if (try_peel(q)) {
                    found = true;
                    break;
                }
            }
        }
        if (!found) throw std::logic_error("extract_optimal_circuit: no rotation peels");
    }

    auto trailing = is_clifford(residual);
    if (!trailing) throw std::logic_error("extract_optimal_circuit: residual is not Clifford");

    Circuit out = synthesize_clifford(*trailing);
    // U-hat = R(peeled[0]) ... R(peeled[t-1]) * C0, so after the Clifford the
    // rotations are emitted right to left, each as conjugator^dag T_(1)
    // conjugator with conjugator * Q * conjugator^dag = Z_(1).
    for (std::uint32_t i = t; i-- > 0;) {
        const Pauli& q = peeled[i];
        if (q == Pauli::single(n, 1, 'Z')) {
            out.push(Gate(GateKind::T, 1));
            continue;
        }
        Circuit conj = pauli_conjugator(q, Pauli::single(n, 1, 'Z'));
        out.append(conj);
        out.push(Gate(GateKind::T, 1));
        out.append(conj.inverse());
    }

    if (ChannelRep::from_circuit(out) != u)
        throw std::logic_error("extract_optimal_circuit: exactness check failed");
    return out;
}

}  // namespace tcount
