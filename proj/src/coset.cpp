#include "tcount/coset.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <thread>
#include <unordered_map>

#include "tcount/wire.hpp"

namespace tcount {

namespace {

inline std::uint64_t rotl64(std::uint64_t x, int r) { return (x << r) | (x >> (64 - r)); }

inline std::uint64_t fmix64(std::uint64_t k) {
    k ^= k >> 33;
    k *= 0xff51afd7ed558ccdull;
    k ^= k >> 33;
    k *= 0xc4ceb9fe1a85ec53ull;
    k ^= k >> 33;
    return k;
}

}  // namespace

// MurmurHash3 x64 128-bit (public domain reference algorithm).
Digest128 digest_bytes(const std::uint8_t* data, std::size_t size) {
    const std::size_t nblocks = size / 16;
    std::uint64_t h1 = 0x544344425f6c6162ull;  // fixed seed
    std::uint64_t h2 = 0x656c5f6469676573ull;
    const std::uint64_t c1 = 0x87c37b91114253d5ull;
    const std::uint64_t c2 = 0x4cf5ad432745937full;

    for (std::size_t i = 0; i < nblocks; ++i) {
        std::uint64_t k1, k2;
        std::memcpy(&k1, data + 16 * i, 8);
        std::memcpy(&k2, data + 16 * i + 8, 8);
        k1 *= c1;
        k1 = rotl64(k1, 31);
        k1 *= c2;
        h1 ^= k1;
        h1 = rotl64(h1, 27);
        h1 += h2;
        h1 = h1 * 5 + 0x52dce729;
        k2 *= c2;
        k2 = rotl64(k2, 33);
        k2 *= c1;
        h2 ^= k2;
        h2 = rotl64(h2, 31);
        h2 += h1;
        h2 = h2 * 5 + 0x38495ab5;
    }

    const std::uint8_t* tail = data + nblocks * 16;
    std::uint64_t k1 = 0, k2 = 0;
    switch (size & 15) {
        case 15: k2 ^= std::uint64_t(tail[14]) << 48; [[fallthrough]];
        case 14: k2 ^= std::uint64_t(tail[13]) << 40; [[fallthrough]];
        case 13: k2 ^= std::uint64_t(tail[12]) << 32; [[fallthrough]];
        case 12: k2 ^= std::uint64_t(tail[11]) << 24; [[fallthrough]];
        case 11: k2 ^= std::uint64_t(tail[10]) << 16; [[fallthrough]];
        case 10: k2 ^= std::uint64_t(tail[9]) << 8; [[fallthrough]];
        case 9:
            k2 ^= std::uint64_t(tail[8]);
            k2 *= c2;
            k2 = rotl64(k2, 33);
            k2 *= c1;
            h2 ^= k2;
            [[fallthrough]];
        case 8: k1 ^= std::uint64_t(tail[7]) << 56; [[fallthrough]];
        case 7: k1 ^= std::uint64_t(tail[6]) << 48; [[fallthrough]];
        case 6: k1 ^= std::uint64_t(tail[5]) << 40; [[fallthrough]];
        case 5: k1 ^= std::uint64_t(tail[4]) << 32; [[fallthrough]];
        case 4: k1 ^= std::uint64_t(tail[3]) << 24; [[fallthrough]];
        case 3: k1 ^= std::uint64_t(tail[2]) << 16; [[fallthrough]];
        case 2: k1 ^= std::uint64_t(tail[1]) << 8; [[fallthrough]];
        case 1:
            k1 ^= std::uint64_t(tail[0]);
            k1 *= c1;
            k1 = rotl64(k1, 31);
            k1 *= c2;
            h1 ^= k1;
            break;
        default: break;
    }

    h1 ^= std::uint64_t(size);
    h2 ^= std::uint64_t(size);
    h1 += h2;
    h2 += h1;
    h1 = fmix64(h1);
    h2 = fmix64(h2);
    h1 += h2;
    h2 += h1;
    return Digest128{h1, h2};
}

std::string Digest128::hex() const {
    static const char* digits = "0123456789abcdef";
    std::string s;
    s.reserve(32);
    for (int i = 15; i >= 8; --i) s.push_back(digits[(hi >> (4 * (i - 8))) & 0xf]);
    for (int i = 7; i >= 0; --i) s.push_back(digits[(lo >> (4 * i)) & 0xf]);
    return s;
}

CosetLabel CosetLabel::of(const ChannelRep& w) {
    CosetLabel label;
    label.n_ = w.qubits();
    label.dim_ = w.dim();
    const std::uint32_t dim = label.dim_;
    const std::uint32_t sde = w.sde();

    // Column-sparse copy; rows are visited in order so entries stay sorted.
    std::vector<std::vector<LabelEntry>> cols(dim);
    for (std::uint32_t r = 0; r < dim; ++r)
        for (const ChannelEntry& e : w.row(r))
            cols[e.col].push_back({static_cast<std::uint16_t>(r), e.value});

    // Negate columns whose first nonzero numerator, written over the common
    // denominator sqrt(2)^sde, has a < 0, or a == 0 and b < 0.
    for (auto& col : cols) {
        if (col.empty()) continue;
        auto [a, b] = col.front().value.numerator_at(sde);
        if (a < 0 || (a == 0 && b < 0))
            for (LabelEntry& e : col) e.value = -e.value;
    }

    // Sort columns by entrywise top-to-bottom comparison in the fixed
    // RingReal order; missing entries compare as zero.
    auto col_less = [dim](const std::vector<LabelEntry>& x, const std::vector<LabelEntry>& y) {
        std::size_t i = 0, j = 0;
        const RingReal zero = RingReal::zero();
        while (i < x.size() || j < y.size()) {
            std::uint32_t ri = i < x.size() ? x[i].row : dim;
            std::uint32_t rj = j < y.size() ? y[j].row : dim;
            if (ri < rj) {
                if (ring_less(x[i].value, zero)) return true;
                if (ring_less(zero, x[i].value)) return false;
                ++i;  // exact zero stored would be a bug, but compare anyway
            } else if (rj < ri) {
                if (ring_less(zero, y[j].value)) return true;
                if (ring_less(y[j].value, zero)) return false;
                ++j;
            } else {
                if (ring_less(x[i].value, y[j].value)) return true;
                if (ring_less(y[j].value, x[i].value)) return false;
                ++i;
                ++j;
            }
        }
        return false;
    };
    std::stable_sort(cols.begin(), cols.end(), col_less);

    label.cols_ = std::move(cols);
    std::vector<std::uint8_t> bytes = label.serialize();
    label.digest_ = digest_bytes(bytes.data(), bytes.size());
    return label;
}

std::vector<std::uint8_t> CosetLabel::serialize() const {
    std::vector<std::uint8_t> out;
    out.reserve(16 + cols_.size() * 8);
    append_u32(out, dim_);
    for (const auto& col : cols_) {
        append_u16(out, static_cast<std::uint16_t>(col.size()));
        for (const LabelEntry& e : col) {
            append_u16(out, e.row);
            append_ring_real(out, e.value);
        }
    }
    return out;
}

ChannelRep CosetLabel::to_channel() const {
    std::vector<SparseRow> rows(dim_);
    for (std::uint32_t c = 0; c < dim_; ++c)
        for (const LabelEntry& e : cols_[c]) rows[e.row].push_back({c, e.value});
    return ChannelRep::from_rows(n_, std::move(rows));
}

int CosetLabel::compare(const CosetLabel& o) const {
    if (dim_ != o.dim_) return dim_ < o.dim_ ? -1 : 1;
    for (std::uint32_t c = 0; c < dim_; ++c) {
        const auto& x = cols_[c];
        const auto& y = o.cols_[c];
        std::size_t i = 0, j = 0;
        const RingReal zero = RingReal::zero();
        while (i < x.size() || j < y.size()) {
            std::uint32_t ri = i < x.size() ? x[i].row : dim_;
            std::uint32_t rj = j < y.size() ? y[j].row : dim_;
            const RingReal& vx = (ri <= rj) ? x[i].value : zero;
            const RingReal& vy = (rj <= ri) ? y[j].value : zero;
            if (ring_less(vx, vy)) return -1;
            if (ring_less(vy, vx)) return 1;
            if (ri <= rj) ++i;
            if (rj <= ri) ++j;
        }
    }
    return 0;
}

const char* db_format_name(DbFormat f) {
    switch (f) {
        case DbFormat::Dense: return "dense";
        case DbFormat::Sparse: return "sparse";
        case DbFormat::Compact: return "compact";
    }
    return "?";
}

std::optional<DbFormat> db_format_from_name(const std::string& name) {
    if (name == "dense") return DbFormat::Dense;
    if (name == "sparse") return DbFormat::Sparse;
    if (name == "compact") return DbFormat::Compact;
    return std::nullopt;
}

std::optional<std::size_t> CosetDatabase::find(const CosetLabel& label) const {
    auto lo = std::lower_bound(records_.begin(), records_.end(), label.digest(),
                               [](const CosetRecord& r, const Digest128& d) { return r.digest < d; });
    for (auto it = lo; it != records_.end() && it->digest == label.digest(); ++it) {
        if (CosetLabel::of(it->unitary) == label)
            return static_cast<std::size_t>(it - records_.begin());
    }
    return std::nullopt;
}

std::optional<DbLookupResult> DatabaseSet::lookup(const CosetLabel& label,
                                                  std::uint32_t limit) const {
    for (std::uint32_t k = 0; k <= limit && k < strata_.size(); ++k) {
        if (auto idx = strata_[k].find(label))
            return DbLookupResult{k, &strata_[k].record(*idx)};
    }
    return std::nullopt;
}

namespace {

// Slim candidate handle: the unitary is rebuilt from its parent record when
// actually needed, which keeps the scan memory-light.
struct Candidate {
    std::uint32_t parent = 0;     // record index in D_{k-1}
    std::uint32_t pauli_pos = 0;  // position in the non-identity enumeration
    Digest128 digest;
};

using SeenMap = std::unordered_map<Digest128, std::pair<std::uint32_t, std::uint32_t>, Digest128Hash>;

}  // namespace

DatabaseSet generate_databases(unsigned n, std::uint32_t max_k, const GenerationConfig& cfg) {
    if (n < 1) throw std::invalid_argument("generate_databases: need n >= 1");
    if (max_k > 60) throw std::invalid_argument("generate_databases: stratum limit is 60");
    const unsigned threads = cfg.threads == 0 ? 1 : cfg.threads;

    std::vector<CosetDatabase> strata;
    std::vector<CosetRecord> d0;
    d0.push_back({{}, ChannelRep::identity(n), CosetLabel::of(ChannelRep::identity(n)).digest()});
    strata.emplace_back(n, 0, std::move(d0));
    if (cfg.progress) cfg.progress(0, 1);

    const std::vector<Pauli> paulis = enumerate_nonidentity(n);
    const std::uint64_t npauli = paulis.size();

    // digest -> (stratum, record index) across all finished strata.
    SeenMap seen;
    seen.emplace(strata[0].record(0).digest, std::make_pair(0u, 0u));

    for (std::uint32_t k = 1; k <= max_k; ++k) {
        const CosetDatabase& prev = strata[k - 1];
        const std::uint64_t total = prev.size() * npauli;

        auto rebuild = [&](const Candidate& c) {
            return prev.record(c.parent).unitary.rotated_left(paulis[c.pauli_pos]);
        };

        // Scan all candidates R(P) * M; keep those whose label digest is not
        // already claimed by an earlier stratum (full label confirmed on
        // digest hits, so hash collisions cannot drop cosets).
        auto scan = [&](std::uint64_t lo, std::uint64_t hi, std::vector<Candidate>& out) {
            for (std::uint64_t c = lo; c < hi; ++c) {
                std::uint32_t m_idx = static_cast<std::uint32_t>(c / npauli);
                std::uint32_t p_idx = static_cast<std::uint32_t>(c % npauli);
                ChannelRep w = prev.record(m_idx).unitary.rotated_left(paulis[p_idx]);
                CosetLabel label = CosetLabel::of(w);
                auto it = seen.find(label.digest());
                if (it != seen.end()) {
                    const CosetRecord& claimed =
                        strata[it->second.first].record(it->second.second);
                    if (CosetLabel::of(claimed.unitary) == label) continue;
                }
                out.push_back({m_idx, p_idx, label.digest()});
            }
        };

        std::vector<std::vector<Candidate>> chunks;
        if (threads <= 1 || total < 2 * threads) {
            chunks.resize(1);
            scan(0, total, chunks[0]);
        } else {
            chunks.resize(threads);
            std::vector<std::thread> pool;
            const std::uint64_t step = (total + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t) {
                std::uint64_t lo = t * step;
                std::uint64_t hi = std::min<std::uint64_t>(total, lo + step);
                if (lo >= hi) continue;
                pool.emplace_back([&scan, &chunks, lo, hi, t] { scan(lo, hi, chunks[t]); });
            }
            for (auto& th : pool) th.join();
        }

        std::vector<Candidate> survivors;
        for (auto& chunk : chunks)
            for (auto& cand : chunk) survivors.push_back(cand);

        // Chunks are concatenated in enumeration order, so a stable sort by
        // digest keeps the candidate order inside each digest group. Within a
        // group, distinct labels are ordered by full comparison and the first
        // candidate of each label class is kept.
        std::stable_sort(survivors.begin(), survivors.end(),
                         [](const Candidate& a, const Candidate& b) { return a.digest < b.digest; });

        std::vector<CosetRecord> records;
        std::size_t i = 0;
        while (i < survivors.size()) {
            std::size_t j = i;
            while (j < survivors.size() && survivors[j].digest == survivors[i].digest) ++j;
            struct Class {
                CosetLabel label;
                ChannelRep unitary;
                std::size_t first;
            };
            std::vector<Class> classes;
            for (std::size_t s = i; s < j; ++s) {
                ChannelRep w = rebuild(survivors[s]);
                CosetLabel label = CosetLabel::of(w);
                bool known = false;
                for (const Class& cl : classes)
                    if (cl.label == label) {
                        known = true;
                        break;
                    }
                if (!known) classes.push_back({std::move(label), std::move(w), s});
            }
            std::sort(classes.begin(), classes.end(),
                      [](const Class& a, const Class& b) { return a.label.compare(b.label) < 0; });
            for (Class& cl : classes) {
                const Candidate& cand = survivors[cl.first];
                std::vector<std::uint32_t> rotations = prev.record(cand.parent).rotations;
                rotations.push_back(paulis[cand.pauli_pos].index());
                records.push_back({std::move(rotations), std::move(cl.unitary), cand.digest});
            }
            i = j;
        }

        for (std::uint32_t idx = 0; idx < records.size(); ++idx)
            seen.emplace(records[idx].digest, std::make_pair(k, idx));
        strata.emplace_back(n, k, std::move(records));
        if (cfg.progress) cfg.progress(k, strata.back().size());
    }
    return DatabaseSet(n, std::move(strata));
}

namespace {

constexpr char kMagic[4] = {'T', 'C', 'D', 'B'};
constexpr std::uint16_t kVersion = 1;

std::uint64_t fnv1a64(const std::uint8_t* data, std::size_t size) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < size; ++i) {
        h ^= data[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

void append_matrix(std::vector<std::uint8_t>& out, const ChannelRep& w, DbFormat format) {
    const std::uint32_t dim = w.dim();
    if (format == DbFormat::Dense) {
        for (std::uint32_t r = 0; r < dim; ++r) {
            const SparseRow& row = w.row(r);
            std::size_t at = 0;
            for (std::uint32_t c = 0; c < dim; ++c) {
                if (at < row.size() && row[at].col == c) {
                    append_ring_real(out, row[at].value);
                    ++at;
                } else {
                    append_ring_real(out, RingReal::zero());
                }
            }
        }
    } else if (format == DbFormat::Sparse) {
        for (std::uint32_t r = 0; r < dim; ++r) {
            const SparseRow& row = w.row(r);
            append_u16(out, static_cast<std::uint16_t>(row.size()));
            for (const ChannelEntry& e : row) {
                append_u16(out, static_cast<std::uint16_t>(e.col));
                append_ring_real(out, e.value);
            }
        }
    }
}

ChannelRep read_matrix(WireReader& in, unsigned n, DbFormat format) {
    const std::uint32_t dim = 1u << (2 * n);
    std::vector<SparseRow> rows(dim);
    if (format == DbFormat::Dense) {
        for (std::uint32_t r = 0; r < dim; ++r)
            for (std::uint32_t c = 0; c < dim; ++c) {
                RingReal v = in.ring_real();
                if (!v.is_zero()) rows[r].push_back({c, v});
            }
    } else {
        for (std::uint32_t r = 0; r < dim; ++r) {
            std::uint16_t nnz = in.u16();
            rows[r].reserve(nnz);
            for (std::uint16_t e = 0; e < nnz; ++e) {
                std::uint16_t col = in.u16();
                rows[r].push_back({col, in.ring_real()});
            }
        }
    }
    return ChannelRep::from_rows(n, std::move(rows));
}

ChannelRep rebuild_from_rotations(unsigned n, const std::vector<std::uint32_t>& rotations) {
    ChannelRep w = ChannelRep::identity(n);
    for (std::uint32_t idx : rotations) w = w.rotated_left(Pauli::from_index(n, idx));
    return w;
}

}  // namespace

void db_write(const CosetDatabase& db, const std::filesystem::path& path, DbFormat format) {
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    append_u16(out, kVersion);
    out.push_back(static_cast<std::uint8_t>(db.qubits()));
    out.push_back(static_cast<std::uint8_t>(db.stratum()));
    out.push_back(static_cast<std::uint8_t>(format));
    append_u64(out, db.size());
    for (const CosetRecord& rec : db.records()) {
        append_u16(out, static_cast<std::uint16_t>(rec.rotations.size()));
        for (std::uint32_t p : rec.rotations) append_u32(out, p);
        append_matrix(out, rec.unitary, format);
        append_u64(out, rec.digest.lo);
        append_u64(out, rec.digest.hi);
    }
    append_u64(out, fnv1a64(out.data(), out.size()));

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw DatabaseError(DatabaseError::Kind::Io, "cannot open " + path.string());
    f.write(reinterpret_cast<const char*>(out.data()),
            static_cast<std::streamsize>(out.size()));
    if (!f) throw DatabaseError(DatabaseError::Kind::Io, "write failed: " + path.string());
}

CosetDatabase db_read(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary | std::ios::ate);
    if (!f) throw DatabaseError(DatabaseError::Kind::Io, "cannot open " + path.string());
    std::streamsize size = f.tellg();
    f.seekg(0);
    std::vector<std::uint8_t> buf(static_cast<std::size_t>(size));
    f.read(reinterpret_cast<char*>(buf.data()), size);
    if (!f) throw DatabaseError(DatabaseError::Kind::Io, "read failed: " + path.string());

    if (buf.size() < 4 + 2 + 3 + 8 + 8)
        throw DatabaseError(DatabaseError::Kind::Truncated, "file too small: " + path.string());
    std::uint64_t stored_sum = 0;
    for (int i = 7; i >= 0; --i) stored_sum = (stored_sum << 8) | buf[buf.size() - 8 + i];
    if (fnv1a64(buf.data(), buf.size() - 8) != stored_sum)
        throw DatabaseError(DatabaseError::Kind::Checksum, "checksum mismatch: " + path.string());

    try {
        WireReader in(buf.data(), buf.size() - 8);
        char magic[4];
        in.bytes(reinterpret_cast<std::uint8_t*>(magic), 4);
        if (std::memcmp(magic, kMagic, 4) != 0)
            throw DatabaseError(DatabaseError::Kind::Magic, "bad magic: " + path.string());
        std::uint16_t version = in.u16();
        if (version != kVersion)
            throw DatabaseError(DatabaseError::Kind::Version,
                                "unsupported version " + std::to_string(version));
        unsigned n = in.u8();
        std::uint32_t k = in.u8();
        std::uint8_t fmt_raw = in.u8();
        if (fmt_raw > 2)
            throw DatabaseError(DatabaseError::Kind::Format, "unknown storage format flag");
        DbFormat format = static_cast<DbFormat>(fmt_raw);
        std::uint64_t count = in.u64();

        std::vector<CosetRecord> records;
        records.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            CosetRecord rec;
            std::uint16_t len = in.u16();
            rec.rotations.reserve(len);
            for (std::uint16_t j = 0; j < len; ++j) rec.rotations.push_back(in.u32());
            if (format == DbFormat::Compact)
                rec.unitary = rebuild_from_rotations(n, rec.rotations);
            else
                rec.unitary = read_matrix(in, n, format);
            rec.digest.lo = in.u64();
            rec.digest.hi = in.u64();
            records.push_back(std::move(rec));
        }
        if (in.remaining() != 0)
            throw DatabaseError(DatabaseError::Kind::Format, "trailing bytes: " + path.string());
        return CosetDatabase(n, k, std::move(records));
    } catch (const std::out_of_range&) {
        throw DatabaseError(DatabaseError::Kind::Truncated, "truncated file: " + path.string());
    }
}

}  // namespace tcount
