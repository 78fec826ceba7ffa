#include "tcount/channel.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcount {

UnitaryMatrix::UnitaryMatrix(unsigned n) : n_(n), dim_(1u << n), m_(std::size_t(dim_) * dim_) {}

UnitaryMatrix UnitaryMatrix::identity(unsigned n) {
    UnitaryMatrix u(n);
    for (std::uint32_t i = 0; i < u.dim_; ++i) u.at(i, i) = CycloElem::one();
    return u;
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& o) const {
    if (n_ != o.n_) throw std::invalid_argument("UnitaryMatrix: dimension mismatch");
    UnitaryMatrix out(n_);
    for (std::uint32_t r = 0; r < dim_; ++r) {
        for (std::uint32_t k = 0; k < dim_; ++k) {
            const CycloElem& v = at(r, k);
            if (v.is_zero()) continue;
            for (std::uint32_t c = 0; c < dim_; ++c) {
                const CycloElem& w = o.at(k, c);
                if (w.is_zero()) continue;
                out.at(r, c) = out.at(r, c) + v * w;
            }
        }
    }
    return out;
}

UnitaryMatrix UnitaryMatrix::dagger() const {
    UnitaryMatrix out(n_);
    for (std::uint32_t r = 0; r < dim_; ++r)
        for (std::uint32_t c = 0; c < dim_; ++c) out.at(c, r) = at(r, c).conj();
    return out;
}

bool UnitaryMatrix::is_unitary() const {
    if (dim_ == 0) return false;
    for (std::uint32_t r = 0; r < dim_; ++r) {
        for (std::uint32_t c = r; c < dim_; ++c) {
            CycloElem acc = CycloElem::zero();
            for (std::uint32_t k = 0; k < dim_; ++k) acc = acc + at(k, r).conj() * at(k, c);
            const CycloElem expect = (r == c) ? CycloElem::one() : CycloElem::zero();
            if (acc != expect) return false;
        }
    }
    return true;
}

UnitaryMatrix gate_matrix(GateKind kind) {
    const CycloElem one = CycloElem::one();
    const CycloElem inv_sqrt2(1, 0, 0, 0, 1);
    switch (kind) {
        case GateKind::H: {
            UnitaryMatrix u(1);
            u.at(0, 0) = inv_sqrt2;
            u.at(0, 1) = inv_sqrt2;
            u.at(1, 0) = inv_sqrt2;
            u.at(1, 1) = -inv_sqrt2;
            return u;
        }
        case GateKind::T: {
            UnitaryMatrix u(1);
            u.at(0, 0) = one;
            u.at(1, 1) = CycloElem::omega_power(1);
            return u;
        }
        case GateKind::Tdg: {
            UnitaryMatrix u(1);
            u.at(0, 0) = one;
            u.at(1, 1) = CycloElem::omega_power(7);
            return u;
        }
        case GateKind::S: {
            UnitaryMatrix u(1);
            u.at(0, 0) = one;
            u.at(1, 1) = CycloElem::omega_power(2);
            return u;
        }
        case GateKind::Sdg: {
            UnitaryMatrix u(1);
            u.at(0, 0) = one;
            u.at(1, 1) = CycloElem::omega_power(6);
            return u;
        }
        case GateKind::X: {
            UnitaryMatrix u(1);
            u.at(0, 1) = one;
            u.at(1, 0) = one;
            return u;
        }
        case GateKind::Z: {
            UnitaryMatrix u(1);
            u.at(0, 0) = one;
            u.at(1, 1) = -one;
            return u;
        }
        case GateKind::Cnot: {
            UnitaryMatrix u(2);
            u.at(0, 0) = one;
            u.at(1, 1) = one;
            u.at(2, 3) = one;
            u.at(3, 2) = one;
            return u;
        }
        case GateKind::Swap: {
            UnitaryMatrix u(2);
            u.at(0, 0) = one;
            u.at(1, 2) = one;
            u.at(2, 1) = one;
            u.at(3, 3) = one;
            return u;
        }
    }
    throw std::logic_error("gate_matrix: unknown gate");
}

namespace {

// Left-multiplies `u` in place by the gate embedded on the given qubits.
// Qubit i occupies state bit (n - i).
void apply_gate_left(UnitaryMatrix& u, const Gate& g) {
    const unsigned n = u.qubits();
    const std::uint32_t dim = u.dim();
    const UnitaryMatrix small = gate_matrix(g.kind);
    const unsigned gate_qubits = gate_is_two_qubit(g.kind) ? 2 : 1;
    const std::uint32_t sdim = small.dim();

    std::uint32_t bits[2] = {0, 0};
    bits[0] = 1u << (n - g.q1);
    if (gate_qubits == 2) bits[1] = 1u << (n - g.q2);

    auto local_index = [&](std::uint32_t state) {
        std::uint32_t li = 0;
        for (unsigned i = 0; i < gate_qubits; ++i) li = (li << 1) | ((state & bits[i]) ? 1u : 0u);
        return li;
    };
    auto with_local = [&](std::uint32_t state, std::uint32_t li) {
        for (unsigned i = 0; i < gate_qubits; ++i) {
            std::uint32_t bit = bits[i];
            bool set = (li >> (gate_qubits - 1 - i)) & 1u;
            state = set ? (state | bit) : (state & ~bit);
        }
        return state;
    };

    UnitaryMatrix out(n);
    for (std::uint32_t r = 0; r < dim; ++r) {
        std::uint32_t lr = local_index(r);
        for (std::uint32_t lk = 0; lk < sdim; ++lk) {
            const CycloElem& coeff = small.at(lr, lk);
            if (coeff.is_zero()) continue;
            std::uint32_t src = with_local(r, lk);
            for (std::uint32_t c = 0; c < dim; ++c) {
                const CycloElem& v = u.at(src, c);
                if (v.is_zero()) continue;
                out.at(r, c) = out.at(r, c) + coeff * v;
            }
        }
    }
    u = out;
}

}  // namespace

UnitaryMatrix unitary_from_circuit(const Circuit& circuit) {
    circuit.validate();
    UnitaryMatrix u = UnitaryMatrix::identity(circuit.qubits);
    for (const Gate& g : circuit.gates) apply_gate_left(u, g);
    return u;
}

ChannelRep::ChannelRep(unsigned n, std::vector<SparseRow> rows)
    : n_(n), dim_(1u << (2 * n)), rows_(std::move(rows)) {
    // dim^2 must stay addressable and row/column indices fit the 16-bit
    // wire encoding
    if (n < 1 || n > 7) throw std::invalid_argument("ChannelRep: supported qubit range is 1..7");
    if (rows_.size() != dim_) throw std::logic_error("ChannelRep: bad row count");
}

ChannelRep ChannelRep::from_rows(unsigned n, std::vector<SparseRow> rows) {
    return ChannelRep(n, std::move(rows));
}

ChannelRep ChannelRep::identity(unsigned n) {
    std::uint32_t dim = 1u << (2 * n);
    std::vector<SparseRow> rows(dim);
    for (std::uint32_t i = 0; i < dim; ++i) rows[i].push_back({i, RingReal::one()});
    return ChannelRep(n, std::move(rows));
}

RingReal ChannelRep::entry(std::uint32_t r, std::uint32_t c) const {
    const SparseRow& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c,
                               [](const ChannelEntry& e, std::uint32_t col) { return e.col < col; });
    if (it != row.end() && it->col == c) return it->value;
    return RingReal::zero();
}

ChannelRep ChannelRep::rotation(const Pauli& axis) {
    if (axis.is_identity()) throw std::invalid_argument("rotation: identity Pauli has no rotation");
    const unsigned n = axis.qubits();
    const std::uint32_t dim = 1u << (2 * n);
    const RingReal inv_sqrt2 = RingReal::inv_sqrt2();
    std::vector<SparseRow> rows(dim);
    for (std::uint32_t q = 0; q < dim; ++q) {
        Pauli pq = Pauli::from_index(n, q);
        if (pq.commutes(axis)) {
            rows[q].push_back({q, RingReal::one()});
            continue;
        }
        // Column q of R(P)-hat is (e_q + sigma * e_rho)/sqrt(2) with
        // rho = letter(q * P) and sigma the sign of i * q * P; the row is the
        // same combination with -sigma.
        PauliProduct prod = pauli_mul(pq, axis);
        std::uint32_t rho = prod.pauli.index();
        int sigma = (prod.phase_power + 1u) % 4u == 0 ? 1 : -1;
        RingReal diag = inv_sqrt2;
        RingReal off = sigma > 0 ? -inv_sqrt2 : inv_sqrt2;
        if (q < rho) {
            rows[q].push_back({q, diag});
            rows[q].push_back({rho, off});
        } else {
            rows[q].push_back({rho, off});
            rows[q].push_back({q, diag});
        }
    }
    return ChannelRep(n, std::move(rows));
}

ChannelRep ChannelRep::from_matrix(const UnitaryMatrix& u) {
    if (!u.is_unitary()) throw std::invalid_argument("from_matrix: input is not exactly unitary");
    const unsigned n = u.qubits();
    const std::uint32_t ndim = u.dim();
    const std::uint32_t dim = 1u << (2 * n);
    const UnitaryMatrix udag = u.dagger();

    std::vector<SparseRow> rows(dim);

    for (std::uint32_t s = 0; s < dim; ++s) {
        Pauli ps = Pauli::from_index(n, s);
        const std::uint32_t xs = ps.x_bits();
        const std::uint32_t zs = ps.z_bits();
        const unsigned ys = ps.weight_y();

        // A = U * P_s, using (P_s)_{l,c} = i^{y_s} (-1)^{z_s . c} delta_{l, c ^ x_s}.
        UnitaryMatrix a(n);
        for (std::uint32_t r = 0; r < ndim; ++r) {
            for (std::uint32_t c = 0; c < ndim; ++c) {
                const CycloElem& v = u.at(r, c ^ xs);
                if (v.is_zero()) continue;
                CycloElem w = v * CycloElem::omega_power(static_cast<int>(2 * ys));
                if (std::popcount(zs & c) % 2 != 0) w = -w;
                a.at(r, c) = w;
            }
        }
        // M = A * U^dag.
        UnitaryMatrix m = a * udag;

        // entry(r, s) = Tr(P_r M) / 2^n.
        for (std::uint32_t r = 0; r < dim; ++r) {
            Pauli pr = Pauli::from_index(n, r);
            const std::uint32_t xr = pr.x_bits();
            const std::uint32_t zr = pr.z_bits();
            const unsigned yr = pr.weight_y();
            CycloElem tr = CycloElem::zero();
            for (std::uint32_t j = 0; j < ndim; ++j) {
                const CycloElem& v = m.at(j ^ xr, j);
                if (v.is_zero()) continue;
                if (std::popcount(zr & (j ^ xr)) % 2 != 0)
                    tr = tr - v;
                else
                    tr = tr + v;
            }
            if (tr.is_zero()) continue;
            tr = tr * CycloElem::omega_power(static_cast<int>(2 * yr));
            CycloElem scaled(tr.a(), tr.b(), tr.c(), tr.d(), tr.k() + 2 * n);
            if (!scaled.is_real())
                throw std::logic_error("from_matrix: non-real channel entry");
            RingReal value = scaled.real_part();
            if (!value.is_zero()) rows[r].push_back({s, value});
        }
    }
    return ChannelRep(n, std::move(rows));
}

ChannelRep ChannelRep::operator*(const ChannelRep& o) const {
    if (n_ != o.n_) throw std::invalid_argument("ChannelRep: dimension mismatch");
    std::vector<SparseRow> rows(dim_);
    std::vector<RingReal> scratch(dim_);
    std::vector<std::uint32_t> touched;
    touched.reserve(dim_);
    for (std::uint32_t r = 0; r < dim_; ++r) {
        touched.clear();
        for (const ChannelEntry& e : rows_[r]) {
            for (const ChannelEntry& f : o.rows_[e.col]) {
                if (scratch[f.col].is_zero() &&
                    std::find(touched.begin(), touched.end(), f.col) == touched.end())
                    touched.push_back(f.col);
                scratch[f.col] = scratch[f.col] + e.value * f.value;
            }
        }
        std::sort(touched.begin(), touched.end());
        SparseRow& out = rows[r];
        out.reserve(touched.size());
        for (std::uint32_t c : touched) {
            if (!scratch[c].is_zero()) out.push_back({c, scratch[c]});
            scratch[c] = RingReal::zero();
        }
    }
    return ChannelRep(n_, std::move(rows));
}

ChannelRep ChannelRep::transpose() const {
    std::vector<SparseRow> rows(dim_);
    for (std::uint32_t r = 0; r < dim_; ++r)
        for (const ChannelEntry& e : rows_[r]) rows[e.col].push_back({r, e.value});
    return ChannelRep(n_, std::move(rows));
}

ChannelRep ChannelRep::transposed_times(const ChannelRep& o) const {
    if (n_ != o.n_) throw std::invalid_argument("ChannelRep: dimension mismatch");
    // Bucket entries by column: cols[c] lists (source row j, value), which is
    // row c of the transpose without copying values around.
    std::vector<SparseRow> cols(dim_);
    for (std::uint32_t j = 0; j < dim_; ++j)
        for (const ChannelEntry& e : rows_[j]) cols[e.col].push_back({j, e.value});

    std::vector<SparseRow> rows(dim_);
    std::vector<RingReal> scratch(dim_);
    std::vector<std::uint32_t> touched;
    touched.reserve(dim_);
    for (std::uint32_t r = 0; r < dim_; ++r) {
        touched.clear();
        for (const ChannelEntry& e : cols[r]) {
            for (const ChannelEntry& f : o.rows_[e.col]) {
                if (scratch[f.col].is_zero() &&
                    std::find(touched.begin(), touched.end(), f.col) == touched.end())
                    touched.push_back(f.col);
                scratch[f.col] = scratch[f.col] + e.value * f.value;
            }
        }
        std::sort(touched.begin(), touched.end());
        SparseRow& out = rows[r];
        out.reserve(touched.size());
        for (std::uint32_t c : touched) {
            if (!scratch[c].is_zero()) out.push_back({c, scratch[c]});
            scratch[c] = RingReal::zero();
        }
    }
    return ChannelRep(n_, std::move(rows));
}

ChannelRep ChannelRep::rotate_impl(const Pauli& axis, bool inverse) const {
    if (axis.is_identity()) throw std::invalid_argument("rotation: identity Pauli has no rotation");
    if (axis.qubits() != n_) throw std::invalid_argument("rotation: qubit count mismatch");
    const RingReal inv_sqrt2 = RingReal::inv_sqrt2();
    std::vector<SparseRow> rows(dim_);
    for (std::uint32_t q = 0; q < dim_; ++q) {
        Pauli pq = Pauli::from_index(n_, q);
        if (pq.commutes(axis)) {
            rows[q] = rows_[q];
            continue;
        }
        PauliProduct prod = pauli_mul(pq, axis);
        std::uint32_t rho = prod.pauli.index();
        int sigma = (prod.phase_power + 1u) % 4u == 0 ? 1 : -1;
        if (inverse) sigma = -sigma;
        // result row q = (row_q - sigma * row_rho) / sqrt(2), merged sparse.
        const SparseRow& rq = rows_[q];
        const SparseRow& rr = rows_[rho];
        SparseRow out;
        out.reserve(rq.size() + rr.size());
        std::size_t i = 0, j = 0;
        while (i < rq.size() || j < rr.size()) {
            std::uint32_t ci = i < rq.size() ? rq[i].col : dim_;
            std::uint32_t cj = j < rr.size() ? rr[j].col : dim_;
            std::uint32_t c = ci < cj ? ci : cj;
            RingReal v;
            if (ci == c && cj == c) {
                v = sigma > 0 ? rq[i].value - rr[j].value : rq[i].value + rr[j].value;
                ++i;
                ++j;
            } else if (ci == c) {
                v = rq[i].value;
                ++i;
            } else {
                v = sigma > 0 ? -rr[j].value : rr[j].value;
                ++j;
            }
            if (!v.is_zero()) out.push_back({c, v * inv_sqrt2});
        }
        rows[q] = std::move(out);
    }
    return ChannelRep(n_, std::move(rows));
}

ChannelRep ChannelRep::rotated_left(const Pauli& axis) const { return rotate_impl(axis, false); }

ChannelRep ChannelRep::rotated_left_inverse(const Pauli& axis) const {
    return rotate_impl(axis, true);
}

std::uint32_t ChannelRep::sde() const {
    std::uint32_t best = 0;
    for (const SparseRow& row : rows_)
        for (const ChannelEntry& e : row)
            if (e.value.sde() > best) best = e.value.sde();
    return best;
}

namespace {

// Small channel representations for each gate kind, built once from the
// exact matrices.
const ChannelRep& base_channel(GateKind kind) {
    static const ChannelRep reps[] = {
        ChannelRep::from_matrix(gate_matrix(GateKind::H)),
        ChannelRep::from_matrix(gate_matrix(GateKind::T)),
        ChannelRep::from_matrix(gate_matrix(GateKind::S)),
        ChannelRep::from_matrix(gate_matrix(GateKind::Sdg)),
        ChannelRep::from_matrix(gate_matrix(GateKind::Tdg)),
        ChannelRep::from_matrix(gate_matrix(GateKind::X)),
        ChannelRep::from_matrix(gate_matrix(GateKind::Z)),
        ChannelRep::from_matrix(gate_matrix(GateKind::Cnot)),
        ChannelRep::from_matrix(gate_matrix(GateKind::Swap)),
    };
    return reps[static_cast<int>(kind)];
}

// Embeds a 1- or 2-qubit channel rep onto the given qubits of an n-qubit
// register: conjugation acts on the local letters and leaves the rest alone.
ChannelRep embed_channel(const ChannelRep& small, unsigned n, const Gate& g) {
    const unsigned gate_qubits = gate_is_two_qubit(g.kind) ? 2 : 1;
    const std::uint32_t dim = 1u << (2 * n);
    std::vector<SparseRow> rows(dim);

    ChannelRep small_t = small.transpose();  // column access

    unsigned q[2] = {g.q1, g.q2};
    for (std::uint32_t s = 0; s < dim; ++s) {
        Pauli ps = Pauli::from_index(n, s);
        // Local column index with qubit order (q1, q2): digit of q1 most
        // significant, matching the small rep's own index order.
        std::uint32_t local_col = 0;
        for (unsigned i = 0; i < gate_qubits; ++i) {
            char l = ps.letter_at(q[i]);
            std::uint32_t digit = l == 'I' ? 0u : l == 'X' ? 1u : l == 'Y' ? 2u : 3u;
            local_col = local_col * 4 + digit;
        }
        for (const ChannelEntry& e : small_t.row(local_col)) {
            // e.col is a row index of `small`; rebuild the full Pauli with
            // the local letters replaced.
            Pauli lr = Pauli::from_index(gate_qubits, e.col);
            std::uint32_t x = ps.x_bits();
            std::uint32_t z = ps.z_bits();
            for (unsigned i = 0; i < gate_qubits; ++i) {
                std::uint32_t bit = 1u << (n - q[i]);
                x &= ~bit;
                z &= ~bit;
                char l = lr.letter_at(i + 1);
                if (l == 'X' || l == 'Y') x |= bit;
                if (l == 'Z' || l == 'Y') z |= bit;
            }
            std::uint32_t r = Pauli(n, x, z).index();
            rows[r].push_back({s, e.value});
        }
    }
    for (SparseRow& row : rows)
        std::sort(row.begin(), row.end(),
                  [](const ChannelEntry& a, const ChannelEntry& b) { return a.col < b.col; });
    return ChannelRep::from_rows(n, std::move(rows));
}

}  // namespace

ChannelRep ChannelRep::from_circuit(const Circuit& circuit) {
    circuit.validate();
    ChannelRep acc = ChannelRep::identity(circuit.qubits);
    for (const Gate& g : circuit.gates) {
        ChannelRep step = embed_channel(base_channel(g.kind), circuit.qubits, g);
        acc = step * acc;
    }
    return acc;
}

}  // namespace tcount
