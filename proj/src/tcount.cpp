#include "tcount/tcount.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace tcount {

ChannelRep TCountWitness::recompose(unsigned n) const {
    ChannelRep acc = trailing.to_channel();
    for (std::uint32_t idx : rotations_v) acc = acc.rotated_left(Pauli::from_index(n, idx));
    for (std::uint32_t idx : rotations_w) acc = acc.rotated_left(Pauli::from_index(n, idx));
    return acc;
}

namespace {

TCountWitness make_witness(const ChannelRep& u, const std::vector<std::uint32_t>& rot_w,
                           const std::vector<std::uint32_t>& rot_v) {
    // Trailing Clifford C with U-hat = W-hat V-hat C-hat.
    const unsigned n = u.qubits();
    ChannelRep residual = u;
    for (auto it = rot_w.rbegin(); it != rot_w.rend(); ++it)
        residual = residual.rotated_left_inverse(Pauli::from_index(n, *it));
    for (auto it = rot_v.rbegin(); it != rot_v.rend(); ++it)
        residual = residual.rotated_left_inverse(Pauli::from_index(n, *it));
    auto tableau = is_clifford(residual);
    if (!tableau) throw std::logic_error("count_t: witness residual is not Clifford");
    return TCountWitness{rot_w, rot_v, *tableau};
}

// Deterministic parallel first-hit scan over [0, total): returns the lowest
// index for which `probe` succeeds, if any.
template <typename Probe>
std::optional<std::uint64_t> first_hit(std::uint64_t total, unsigned threads, Probe&& probe) {
    if (threads <= 1 || total < 2 * threads) {
        for (std::uint64_t i = 0; i < total; ++i)
            if (probe(i)) return i;
        return std::nullopt;
    }
    std::atomic<std::uint64_t> best{total};
    std::vector<std::thread> pool;
    const std::uint64_t step = (total + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::uint64_t lo = t * step;
        std::uint64_t hi = std::min<std::uint64_t>(total, lo + step);
        if (lo >= hi) continue;
        pool.emplace_back([&, lo, hi] {
            for (std::uint64_t i = lo; i < hi; ++i) {
                if (i >= best.load(std::memory_order_relaxed)) break;
                if (probe(i)) {
                    std::uint64_t cur = best.load(std::memory_order_relaxed);
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {
                    }
                    break;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    std::uint64_t found = best.load();
    if (found == total) return std::nullopt;
    return found;
}

}  // namespace

TCountResult count_t(const ChannelRep& u, std::uint32_t max_m, const DatabaseSet& dbs,
                     unsigned threads) {
    if (u.qubits() != dbs.qubits())
        throw std::invalid_argument("count_t: qubit count differs from databases");
    const unsigned n = u.qubits();
    const std::uint32_t have_k = dbs.max_k();
    const std::uint32_t want_k = (max_m + 1) / 2;
    // Split stratum: ceil(max_m/2) when available, else the top stored
    // stratum; with strata 0..K the search can decide up to max_m = 2K + 1
    // (the (K+1)-level factors are enumerated on the fly).
    const std::uint32_t split = std::min(want_k, have_k);
    if (max_m > 2 * split + 1)
        throw std::invalid_argument("count_t: needs database stratum " + std::to_string(want_k) +
                                    " (have up to " + std::to_string(have_k) + ")");

    TCountResult result;
    result.max_m = max_m;

    // Check T(U) <= split by direct lookup.
    CosetLabel label = CosetLabel::of(u);
    if (auto hit = dbs.lookup(label, std::min(split, max_m))) {
        result.tcount = hit->stratum;
        result.witness = make_witness(u, {}, hit->record->rotations);
        return result;
    }
    if (max_m <= split) return result;

    const CosetDatabase& right = dbs.stratum(split);

    // Meet in the middle: T(U) = r exactly when some W with T(W) = r - split
    // satisfies label(W^T U) in D_split.
    for (std::uint32_t r = split + 1; r <= std::min(max_m, 2 * split); ++r) {
        const CosetDatabase& left = dbs.stratum(r - split);
        auto probe = [&](std::uint64_t i) {
            ChannelRep wtu = left.record(i).unitary.transposed_times(u);
            return right.find(CosetLabel::of(wtu)).has_value();
        };
        if (auto hit = first_hit(left.size(), threads, probe)) {
            const CosetRecord& wrec = left.record(*hit);
            ChannelRep wtu = wrec.unitary.transposed_times(u);
            auto vidx = right.find(CosetLabel::of(wtu));
            result.tcount = r;
            result.witness =
                make_witness(u, wrec.rotations, right.record(*vidx).rotations);
            return result;
        }
    }

    // Top level r = 2*split + 1: the W side would live in D_{split+1}, which
    // is not stored; enumerate its candidates R(P) * M with M in D_split.
    if (max_m == 2 * split + 1) {
        const CosetDatabase& top = dbs.stratum(split);
        const std::vector<Pauli> paulis = enumerate_nonidentity(n);
        const std::uint64_t npauli = paulis.size();
        auto probe = [&](std::uint64_t i) {
            const CosetRecord& m = top.record(i / npauli);
            const Pauli& p = paulis[i % npauli];
            ChannelRep w = m.unitary.rotated_left(p);
            ChannelRep wtu = w.transposed_times(u);
            return right.find(CosetLabel::of(wtu)).has_value();
        };
        if (auto hit = first_hit(top.size() * npauli, threads, probe)) {
            const CosetRecord& m = top.record(*hit / npauli);
            const Pauli& p = paulis[*hit % npauli];
            std::vector<std::uint32_t> rot_w = m.rotations;
            rot_w.push_back(p.index());
            ChannelRep w = m.unitary.rotated_left(p);
            ChannelRep wtu = w.transposed_times(u);
            auto vidx = right.find(CosetLabel::of(wtu));
            result.tcount = 2 * split + 1;
            result.witness = make_witness(u, rot_w, right.record(*vidx).rotations);
            return result;
        }
    }

    return result;
}

TCountResult count_t_naive(const ChannelRep& u, std::uint32_t max_m) {
    const unsigned n = u.qubits();
    const double dim = std::pow(2.0, n);
    if (std::pow(dim, 2.0 * max_m) > 1e8)
        throw std::invalid_argument("count_t_naive: N^(2m) exceeds the enumeration guard");

    TCountResult result;
    result.max_m = max_m;

    const std::vector<Pauli> paulis = enumerate_nonidentity(n);

    // Depth-first over rotation tuples at exactly depth j, j ascending, so
    // the first Clifford residual gives the minimum count. Adjacent repeats
    // are pruned (R(P)^2 = I, so any product using one is found earlier).
    std::vector<std::uint32_t> path;
    auto dfs = [&](auto&& self, const ChannelRep& residual, std::uint32_t depth) -> bool {
        if (depth == 0) {
            auto tableau = is_clifford(residual);
            if (!tableau) return false;
            std::vector<std::uint32_t> rotations(path.rbegin(), path.rend());
            result.witness = TCountWitness{{}, std::move(rotations), *tableau};
            return true;
        }
        for (std::uint32_t i = 0; i < paulis.size(); ++i) {
            if (!path.empty() && path.back() == paulis[i].index()) continue;
            path.push_back(paulis[i].index());
            if (self(self, residual.rotated_left_inverse(paulis[i]), depth - 1)) return true;
            path.pop_back();
        }
        return false;
    };

    for (std::uint32_t j = 0; j <= max_m; ++j) {
        path.clear();
        if (dfs(dfs, u, j)) {
            result.tcount = j;
            return result;
        }
    }
    return result;
}

std::uint32_t tcount_single_qubit(const ChannelRep& u) {
    if (u.qubits() != 1) throw std::invalid_argument("tcount_single_qubit: needs n = 1");
    return u.sde();
}

}  // namespace tcount
