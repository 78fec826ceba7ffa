#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tcount/channel.hpp"
#include "tcount/clifford.hpp"
#include "tcount/coset.hpp"

namespace tcount {

/// Decomposition certificate: U-hat equals the product of R(P) rotations for
/// the W-side sequence, then the V-side sequence, then the trailing Clifford.
/// Sequences list Pauli indices with the rightmost factor first, matching the
/// database convention.
struct TCountWitness {
    std::vector<std::uint32_t> rotations_w;
    std::vector<std::uint32_t> rotations_v;
    CliffordTableau trailing;

    /// Exact recomposition of the certified channel representation.
    ChannelRep recompose(unsigned n) const;
};

struct TCountResult {
    std::optional<std::uint32_t> tcount;  // empty means "greater than max_m"
    std::uint32_t max_m = 0;
    std::optional<TCountWitness> witness;

    bool decided() const { return tcount.has_value(); }
};

/// Decides whether the T-count of U-hat is at most max_m and computes it
/// exactly when it is. Requires strata 0..ceil(max_m / 2); when the database
/// set stops at stratum K < ceil(max_m / 2) the search still decides
/// max_m <= 2K + 1 by enumerating the (K+1)-st level on the fly.
TCountResult count_t(const ChannelRep& u, std::uint32_t max_m, const DatabaseSet& dbs,
                     unsigned threads = 1);

/// Independent exhaustive oracle: smallest j <= max_m such that some product
/// of j rotations turns U-hat into a Clifford. Guarded to N^(2*max_m) <= 1e8.
TCountResult count_t_naive(const ChannelRep& u, std::uint32_t max_m);

/// Single-qubit T-count: the largest smallest-denominator-exponent over the
/// entries of the channel representation.
std::uint32_t tcount_single_qubit(const ChannelRep& u);

}  // namespace tcount
