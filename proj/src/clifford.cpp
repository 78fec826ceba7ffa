#include "tcount/clifford.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcount {

CliffordTableau::CliffordTableau(unsigned n, std::vector<SignedPauli> img_x,
                                 std::vector<SignedPauli> img_z)
    : n_(n), img_x_(std::move(img_x)), img_z_(std::move(img_z)) {
    if (img_x_.size() != n_ || img_z_.size() != n_)
        throw std::invalid_argument("CliffordTableau: wrong generator count");
}

CliffordTableau CliffordTableau::identity(unsigned n) {
    std::vector<SignedPauli> xs, zs;
    xs.reserve(n);
    zs.reserve(n);
    for (unsigned q = 1; q <= n; ++q) {
        xs.push_back({Pauli::single(n, q, 'X'), 1});
        zs.push_back({Pauli::single(n, q, 'Z'), 1});
    }
    return CliffordTableau(n, std::move(xs), std::move(zs));
}

SignedPauli CliffordTableau::apply(const SignedPauli& p) const {
    if (p.pauli.qubits() != n_) throw std::invalid_argument("CliffordTableau: qubit count mismatch");
    // p = i^y * prod_i X_i^{x_i} Z_i^{z_i}; conjugation distributes over the
    // product, so multiply out the generator images with full phase tracking.
    unsigned phase = p.pauli.weight_y();  // i^y from the letter convention
    if (p.sign < 0) phase += 2;
    Pauli acc = Pauli::identity(n_);
    for (unsigned q = 1; q <= n_; ++q) {
        char l = p.pauli.letter_at(q);
        if (l == 'X' || l == 'Y') {
            const SignedPauli& img = img_x_[q - 1];
            PauliProduct prod = pauli_mul(acc, img.pauli);
            phase += prod.phase_power + (img.sign < 0 ? 2u : 0u);
            acc = prod.pauli;
        }
        if (l == 'Z' || l == 'Y') {
            const SignedPauli& img = img_z_[q - 1];
            PauliProduct prod = pauli_mul(acc, img.pauli);
            phase += prod.phase_power + (img.sign < 0 ? 2u : 0u);
            acc = prod.pauli;
        }
    }
    // pauli_mul phases are already relative to Hermitian letters, so the
    // accumulated power is the whole story.
    phase %= 4u;
    if (phase != 0 && phase != 2)
        throw std::logic_error("CliffordTableau: non-real conjugation phase");
    return SignedPauli{acc, phase == 0 ? 1 : -1};
}

CliffordTableau CliffordTableau::then_after(const CliffordTableau& other) const {
    if (n_ != other.n_) throw std::invalid_argument("CliffordTableau: qubit count mismatch");
    std::vector<SignedPauli> xs, zs;
    xs.reserve(n_);
    zs.reserve(n_);
    for (unsigned q = 1; q <= n_; ++q) {
        xs.push_back(apply(other.image_x(q)));
        zs.push_back(apply(other.image_z(q)));
    }
    return CliffordTableau(n_, std::move(xs), std::move(zs));
}

ChannelRep CliffordTableau::to_channel() const {
    std::uint32_t dim = 1u << (2 * n_);
    std::vector<SparseRow> rows(dim);
    for (std::uint32_t s = 0; s < dim; ++s) {
        SignedPauli img = apply(Pauli::from_index(n_, s));
        rows[img.pauli.index()].push_back(
            {s, img.sign > 0 ? RingReal::one() : -RingReal::one()});
    }
    for (SparseRow& row : rows)
        std::sort(row.begin(), row.end(),
                  [](const ChannelEntry& a, const ChannelEntry& b) { return a.col < b.col; });
    return ChannelRep::from_rows(n_, std::move(rows));
}

bool CliffordTableau::is_symplectic() const {
    for (unsigned p = 1; p <= n_; ++p) {
        for (unsigned q = 1; q <= n_; ++q) {
            bool want_anti = (p == q);
            if (img_x_[p - 1].pauli.commutes(img_z_[q - 1].pauli) == want_anti) return false;
            if (!img_x_[p - 1].pauli.commutes(img_x_[q - 1].pauli)) return false;
            if (!img_z_[p - 1].pauli.commutes(img_z_[q - 1].pauli)) return false;
        }
    }
    return true;
}

CliffordTableau gate_tableau(const Gate& g, unsigned n) {
    if (!gate_is_clifford(g.kind)) throw std::invalid_argument("gate_tableau: not a Clifford gate");
    std::vector<SignedPauli> xs, zs;
    for (unsigned q = 1; q <= n; ++q) {
        xs.push_back({Pauli::single(n, q, 'X'), 1});
        zs.push_back({Pauli::single(n, q, 'Z'), 1});
    }
    const unsigned a = g.q1, b = g.q2;
    auto y_of = [&](unsigned q, int sign) { return SignedPauli{Pauli::single(n, q, 'Y'), sign}; };
    switch (g.kind) {
        case GateKind::H:
            xs[a - 1] = {Pauli::single(n, a, 'Z'), 1};
            zs[a - 1] = {Pauli::single(n, a, 'X'), 1};
            break;
        case GateKind::S:  // diag(1, i): X -> Y, Z -> Z
            xs[a - 1] = y_of(a, 1);
            break;
        case GateKind::Sdg:  // X -> -Y
            xs[a - 1] = y_of(a, -1);
            break;
        case GateKind::X:  // Z -> -Z
            zs[a - 1].sign = -1;
            break;
        case GateKind::Z:  // X -> -X
            xs[a - 1].sign = -1;
            break;
        case GateKind::Cnot: {
            // X_c -> X_c X_t, Z_t -> Z_c Z_t
            Pauli xc = Pauli(n, Pauli::single(n, a, 'X').x_bits() | Pauli::single(n, b, 'X').x_bits(), 0);
            Pauli zt = Pauli(n, 0, Pauli::single(n, a, 'Z').z_bits() | Pauli::single(n, b, 'Z').z_bits());
            xs[a - 1] = {xc, 1};
            zs[b - 1] = {zt, 1};
            break;
        }
        case GateKind::Swap: {
            xs[a - 1] = {Pauli::single(n, b, 'X'), 1};
            xs[b - 1] = {Pauli::single(n, a, 'X'), 1};
            zs[a - 1] = {Pauli::single(n, b, 'Z'), 1};
            zs[b - 1] = {Pauli::single(n, a, 'Z'), 1};
            break;
        }
        default:
            throw std::invalid_argument("gate_tableau: not a Clifford gate");
    }
    return CliffordTableau(n, std::move(xs), std::move(zs));
}

CliffordTableau tableau_from_circuit(const Circuit& circuit) {
    circuit.validate();
    CliffordTableau acc = CliffordTableau::identity(circuit.qubits);
    for (const Gate& g : circuit.gates)
        acc = gate_tableau(g, circuit.qubits).then_after(acc);
    return acc;
}

std::optional<CliffordTableau> is_clifford(const ChannelRep& w) {
    const std::uint32_t dim = w.dim();
    const unsigned n = w.qubits();
    // column -> (row, sign) for the single nonzero of each column
    std::vector<std::int32_t> col_row(dim, -1);
    std::vector<int> col_sign(dim, 0);
    const RingReal one = RingReal::one();
    for (std::uint32_t r = 0; r < dim; ++r) {
        const SparseRow& row = w.row(r);
        if (row.size() != 1) return std::nullopt;
        const ChannelEntry& e = row.front();
        int sign;
        if (e.value == one)
            sign = 1;
        else if (e.value == -one)
            sign = -1;
        else
            return std::nullopt;
        if (col_row[e.col] != -1) return std::nullopt;
        col_row[e.col] = static_cast<std::int32_t>(r);
        col_sign[e.col] = sign;
    }
    std::vector<SignedPauli> xs, zs;
    xs.reserve(n);
    zs.reserve(n);
    for (unsigned q = 1; q <= n; ++q) {
        std::uint32_t cx = Pauli::single(n, q, 'X').index();
        std::uint32_t cz = Pauli::single(n, q, 'Z').index();
        xs.push_back({Pauli::from_index(n, static_cast<std::uint32_t>(col_row[cx])), col_sign[cx]});
        zs.push_back({Pauli::from_index(n, static_cast<std::uint32_t>(col_row[cz])), col_sign[cz]});
    }
    return CliffordTableau(n, std::move(xs), std::move(zs));
}

namespace {

// Work state for tableau reduction: the current tableau images, plus the
// gates applied so far (as left multiplications).
struct Reduction {
    unsigned n;
    std::vector<SignedPauli> img_x;
    std::vector<SignedPauli> img_z;
    std::vector<Gate> applied;

    void apply(const Gate& g) {
        CliffordTableau t = gate_tableau(g, n);
        for (auto& p : img_x) p = t.apply(p);
        for (auto& p : img_z) p = t.apply(p);
        applied.push_back(g);
    }

    // Reduces `p` to +/- X on `target` using S (Y letters), H (Z letters)
    // and CNOTs from the pivot. Only acts on qubits >= target.
    void reduce_to_x(SignedPauli& tracked, unsigned target) {
        auto letter = [&](unsigned q) { return tracked.pauli.letter_at(q); };
        for (unsigned q = target; q <= n; ++q)
            if (letter(q) == 'Y') apply(Gate(GateKind::S, q));
        for (unsigned q = target; q <= n; ++q)
            if (letter(q) == 'Z') apply(Gate(GateKind::H, q));
        unsigned pivot = 0;
        for (unsigned q = target; q <= n; ++q)
            if (letter(q) == 'X') {
                pivot = q;
                break;
            }
        if (pivot == 0) throw std::logic_error("synthesize_clifford: lost the X support");
        for (unsigned q = pivot + 1; q <= n; ++q)
            if (letter(q) == 'X') apply(Gate(GateKind::Cnot, pivot, q));
        if (pivot != target) {
            apply(Gate(GateKind::Cnot, pivot, target));
            apply(Gate(GateKind::Cnot, target, pivot));
            apply(Gate(GateKind::Cnot, pivot, target));
        }
    }
};

}  // namespace

Circuit synthesize_clifford(const CliffordTableau& tableau) {
    if (!tableau.is_symplectic())
        throw std::invalid_argument("synthesize_clifford: tableau violates commutation relations");
    const unsigned n = tableau.qubits();
    Reduction work{n, {}, {}, {}};
    for (unsigned q = 1; q <= n; ++q) {
        work.img_x.push_back(tableau.image_x(q));
        work.img_z.push_back(tableau.image_z(q));
    }

    for (unsigned i = 1; i <= n; ++i) {
        // Bring image of X_(i) to X_(i), ...
        if (work.img_x[i - 1].pauli != Pauli::single(n, i, 'X'))
            work.reduce_to_x(work.img_x[i - 1], i);
        // ... then image of Z_(i) to Z_(i) with gates fixing X_(i): swap the
        // roles with H, reduce to X with pivot forced at i, swap back.
        if (work.img_z[i - 1].pauli != Pauli::single(n, i, 'Z')) {
            work.apply(Gate(GateKind::H, i));
            work.reduce_to_x(work.img_z[i - 1], i);
            work.apply(Gate(GateKind::H, i));
        }
        // Sign fixes: Z_i flips X, X_i flips Z.
        if (work.img_x[i - 1].sign < 0) {
            work.apply(Gate(GateKind::S, i));
            work.apply(Gate(GateKind::S, i));
        }
        if (work.img_z[i - 1].sign < 0) {
            work.apply(Gate(GateKind::H, i));
            work.apply(Gate(GateKind::S, i));
            work.apply(Gate(GateKind::S, i));
            work.apply(Gate(GateKind::H, i));
        }
    }

    for (unsigned q = 1; q <= n; ++q) {
        if (work.img_x[q - 1] != SignedPauli{Pauli::single(n, q, 'X'), 1} ||
            work.img_z[q - 1] != SignedPauli{Pauli::single(n, q, 'Z'), 1})
            throw std::logic_error("synthesize_clifford: reduction failed");
    }

    // applied gates g_1..g_k satisfy g_k ... g_1 C = I, so
    // C = g_1^{-1} ... g_k^{-1}, applied right to left.
    Circuit out(n);
    for (auto it = work.applied.rbegin(); it != work.applied.rend(); ++it) {
        Gate g = *it;
        if (g.kind == GateKind::S) {
            // Stay inside {H, S, CNOT}: S^{-1} = S S S.
            out.push(Gate(GateKind::S, g.q1));
            out.push(Gate(GateKind::S, g.q1));
            out.push(Gate(GateKind::S, g.q1));
        } else {
            out.push(g);  // H and CNOT are involutions
        }
    }
    return out;
}

namespace {

// Clifford circuit mapping Z_(1) to the given non-identity Pauli under
// conjugation, with sign exactly +1.
Circuit z1_router(const Pauli& target) {
    const unsigned n = target.qubits();
    Circuit c(n);
    std::vector<unsigned> support;
    for (unsigned q = 1; q <= n; ++q)
        if (target.letter_at(q) != 'I') support.push_back(q);
    if (support.empty()) throw std::invalid_argument("pauli_conjugator: identity Pauli");

    unsigned anchor = support.front();
    if (anchor != 1) c.push(Gate(GateKind::Swap, 1, anchor));
    // Fan Z_(anchor) out to Z on every support qubit: CNOT(q, anchor) maps
    // Z_anchor -> Z_q Z_anchor.
    for (unsigned q : support)
        if (q != anchor) c.push(Gate(GateKind::Cnot, q, anchor));
    // Fix letters per qubit: H gives X, S H gives Y.
    for (unsigned q : support) {
        char l = target.letter_at(q);
        if (l == 'X') {
            c.push(Gate(GateKind::H, q));
        } else if (l == 'Y') {
            c.push(Gate(GateKind::H, q));
            c.push(Gate(GateKind::S, q));
        }
    }
    return c;
}

}  // namespace

Circuit pauli_conjugator(const Pauli& from, const Pauli& to) {
    from.require_same_n(to);
    if (from.is_identity() || to.is_identity())
        throw std::invalid_argument("pauli_conjugator: identity Pauli");
    Circuit route_from = z1_router(from);
    Circuit route_to = z1_router(to);
    Circuit out = route_from.inverse();
    out.append(route_to);

    // The construction routes through +Z_(1) with all plus signs, so the
    // composite maps `from` to +`to`; verify via the tableau.
    SignedPauli image = tableau_from_circuit(out).apply(from);
    if (image != SignedPauli{to, 1})
        throw std::logic_error("pauli_conjugator: sign or letter mismatch");
    return out;
}

namespace {

// sqrt(2)-conjugation (omega -> omega^3) on numerator coefficients.
CycloElem sigma3(const CycloElem& v) {
    return CycloElem(v.a(), v.d(), checked_neg(v.c()), v.b(), v.k());
}

// omega -> omega^5 = -omega.
CycloElem sigma5(const CycloElem& v) {
    return CycloElem(v.a(), checked_neg(v.b()), v.c(), checked_neg(v.d()), v.k());
}

// Exact division in Z[omega] via the rational norm:
// x / y = x * sigma3(y) * sigma5(y) * sigma7(y) / N(y) with N(y) integral.
CycloElem zomega_divexact(const CycloElem& num, const CycloElem& den) {
    CycloElem mult = sigma3(den) * sigma5(den) * den.conj();
    CycloElem norm = den * mult;
    if (norm.k() != 0 || norm.b() != 0 || norm.c() != 0 || norm.d() != 0)
        throw std::logic_error("zomega_divexact: norm is not a rational integer");
    Int nn = norm.a();
    if (nn == 0) throw std::logic_error("zomega_divexact: division by zero");
    CycloElem p = num * mult;
    auto div = [&](Int v) {
        if (v % nn != 0) throw std::logic_error("zomega_divexact: inexact division");
        return v / nn;
    };
    return CycloElem(div(p.a()), div(p.b()), div(p.c()), div(p.d()), p.k());
}

// Exact determinant via fraction-free (Bareiss) elimination over Z[omega],
// after scaling every entry to the common denominator exponent.
CycloElem exact_determinant(const UnitaryMatrix& u) {
    const std::uint32_t dim = u.dim();
    std::uint32_t kmax = 0;
    for (std::uint32_t r = 0; r < dim; ++r)
        for (std::uint32_t c = 0; c < dim; ++c)
            if (u.at(r, c).k() > kmax) kmax = u.at(r, c).k();

    std::vector<CycloElem> m(std::size_t(dim) * dim);
    for (std::uint32_t r = 0; r < dim; ++r)
        for (std::uint32_t c = 0; c < dim; ++c) {
            Int coeffs[4];
            u.at(r, c).numerator_at(kmax, coeffs);
            m[r * dim + c] = CycloElem(coeffs[0], coeffs[1], coeffs[2], coeffs[3], 0);
        }

    int det_sign = 1;
    CycloElem prev = CycloElem::one();
    for (std::uint32_t p = 0; p + 1 < dim; ++p) {
        if (m[p * dim + p].is_zero()) {
            std::uint32_t swap_row = p + 1;
            while (swap_row < dim && m[swap_row * dim + p].is_zero()) ++swap_row;
            if (swap_row == dim) return CycloElem::zero();
            for (std::uint32_t c = 0; c < dim; ++c)
                std::swap(m[p * dim + c], m[swap_row * dim + c]);
            det_sign = -det_sign;
        }
        for (std::uint32_t r = p + 1; r < dim; ++r) {
            for (std::uint32_t c = p + 1; c < dim; ++c) {
                CycloElem val = m[r * dim + c] * m[p * dim + p] - m[r * dim + p] * m[p * dim + c];
                m[r * dim + c] = zomega_divexact(val, prev);
            }
            m[r * dim + p] = CycloElem::zero();
        }
        prev = m[p * dim + p];
    }
    CycloElem det = m[std::size_t(dim) * dim - 1];
    if (det_sign < 0) det = -det;
    // Undo the scaling: det(U) = det(scaled) / sqrt(2)^(kmax * dim).
    return CycloElem(det.a(), det.b(), det.c(), det.d(),
                     det.k() + kmax * dim);
}

}  // namespace

MembershipReport check_membership(const UnitaryMatrix& u) {
    if (!u.is_unitary()) throw std::invalid_argument("check_membership: input is not exactly unitary");
    const std::uint32_t dim = u.dim();
    CycloElem det = exact_determinant(u);
    // Allowed values: exp(i pi N r / 8) = omega^{(N/2) r}, r in [8].
    for (int r = 1; r <= 8; ++r) {
        int e = static_cast<int>((dim / 2) % 16) * r;
        if (det == CycloElem::omega_power(e)) {
            MembershipReport rep;
            rep.member = true;
            rep.detail = "det U = " + det.to_string() + " matches r=" + std::to_string(r);
            return rep;
        }
    }
    MembershipReport rep;
    rep.member = false;
    rep.detail = "det U = " + det.to_string() + " is not of the form exp(i*pi*N*r/8)";
    return rep;
}

}  // namespace tcount
