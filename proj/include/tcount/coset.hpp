#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tcount/channel.hpp"

namespace tcount {

struct Digest128 {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    bool operator==(const Digest128& o) const { return lo == o.lo && hi == o.hi; }
    bool operator!=(const Digest128& o) const { return !(*this == o); }
    bool operator<(const Digest128& o) const { return hi != o.hi ? hi < o.hi : lo < o.lo; }

    std::string hex() const;
};

struct Digest128Hash {
    std::size_t operator()(const Digest128& d) const {
        return static_cast<std::size_t>(d.lo ^ (d.hi * 0x9e3779b97f4a7c15ull));
    }
};

/// MurmurHash3 x64 128 over a byte buffer (collision safety in the database
/// is backed by full label comparison, so the hash only affects speed).
Digest128 digest_bytes(const std::uint8_t* data, std::size_t size);

struct LabelEntry {
    std::uint16_t row = 0;
    RingReal value;

    bool operator==(const LabelEntry& o) const { return row == o.row && value == o.value; }
};

/// Canonical form identifying the left coset W * Clifford-hat: all entries at
/// the common denominator sqrt(2)^sde(W), each column negated so its first
/// nonzero numerator is nonnegative-leading, columns sorted by the fixed
/// entrywise order. Stored column-sparse with a 128-bit digest of the
/// bit-exact serialization.
class CosetLabel {
  public:
    CosetLabel() = default;

    /// The labeling procedure.
    static CosetLabel of(const ChannelRep& w);

    unsigned qubits() const { return n_; }
    std::uint32_t dim() const { return dim_; }
    const Digest128& digest() const { return digest_; }
    const std::vector<std::vector<LabelEntry>>& columns() const { return cols_; }

    /// Reconstructs the label matrix as a ChannelRep (used for idempotence
    /// checks; the label of a label is itself).
    ChannelRep to_channel() const;

    bool operator==(const CosetLabel& o) const {
        return n_ == o.n_ && digest_ == o.digest_ && cols_ == o.cols_;
    }
    bool operator!=(const CosetLabel& o) const { return !(*this == o); }

    /// Full structural comparison, column-major: <0, 0, >0.
    int compare(const CosetLabel& o) const;

    std::vector<std::uint8_t> serialize() const;

  private:
    unsigned n_ = 0;
    std::uint32_t dim_ = 0;
    std::vector<std::vector<LabelEntry>> cols_;
    Digest128 digest_;
};

inline CosetLabel coset_label(const ChannelRep& w) { return CosetLabel::of(w); }

/// One database entry: the rotation generator sequence (Pauli indices,
/// rightmost factor first), the unitary W it generates, and the digest of
/// its coset label. The full label is recomputed from W on the rare digest
/// collision.
struct CosetRecord {
    std::vector<std::uint32_t> rotations;
    ChannelRep unitary;
    Digest128 digest;
};

enum class DbFormat : std::uint8_t { Dense = 0, Sparse = 1, Compact = 2 };

const char* db_format_name(DbFormat f);
std::optional<DbFormat> db_format_from_name(const std::string& name);

/// Sorted coset database for one T-count stratum: records sorted ascending
/// by label under the order (digest, then full label).
class CosetDatabase {
  public:
    CosetDatabase() = default;
    CosetDatabase(unsigned n, std::uint32_t k, std::vector<CosetRecord> records)
        : n_(n), k_(k), records_(std::move(records)) {}

    unsigned qubits() const { return n_; }
    std::uint32_t stratum() const { return k_; }
    std::size_t size() const { return records_.size(); }
    const CosetRecord& record(std::size_t i) const { return records_[i]; }
    const std::vector<CosetRecord>& records() const { return records_; }

    /// Binary search by digest, then full-label confirmation on digest match.
    std::optional<std::size_t> find(const CosetLabel& label) const;

  private:
    unsigned n_ = 0;
    std::uint32_t k_ = 0;
    std::vector<CosetRecord> records_;
};

struct DbLookupResult {
    std::uint32_t stratum = 0;
    const CosetRecord* record = nullptr;
};

/// Strata D_0 .. D_K for one qubit count.
class DatabaseSet {
  public:
    DatabaseSet() = default;
    DatabaseSet(unsigned n, std::vector<CosetDatabase> strata)
        : n_(n), strata_(std::move(strata)) {}

    unsigned qubits() const { return n_; }
    std::uint32_t max_k() const { return static_cast<std::uint32_t>(strata_.size()) - 1; }
    const CosetDatabase& stratum(std::uint32_t k) const { return strata_.at(k); }

    /// Searches strata 0..limit (inclusive); smallest stratum wins.
    std::optional<DbLookupResult> lookup(const CosetLabel& label, std::uint32_t limit) const;
    std::optional<DbLookupResult> lookup(const CosetLabel& label) const {
        return lookup(label, max_k());
    }

  private:
    unsigned n_ = 0;
    std::vector<CosetDatabase> strata_;
};

struct GenerationConfig {
    unsigned threads = 1;
    /// Called after each stratum is completed (stratum, record count).
    std::function<void(std::uint32_t, std::size_t)> progress;
};

/// Builds D_0..D_max_k by breadth-first closure: D_0 = {identity}; each
/// candidate R(P) * M with M in D_{k-1} and P a non-identity Pauli enters
/// D_k exactly when its coset label is new across strata 0..k. Output is
/// deterministic and independent of the worker count.
DatabaseSet generate_databases(unsigned n, std::uint32_t max_k, const GenerationConfig& cfg = {});

/// Errors raised by database persistence.
class DatabaseError : public std::runtime_error {
  public:
    enum class Kind { Io, Magic, Version, Truncated, Checksum, Format };

    DatabaseError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

void db_write(const CosetDatabase& db, const std::filesystem::path& path, DbFormat format);
CosetDatabase db_read(const std::filesystem::path& path);

}  // namespace tcount
