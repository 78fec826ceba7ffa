#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tcount/ring.hpp"

namespace tcount {

/// Little-endian byte encoding used by the database files and by coset-label
/// hashing. Ring coefficients are pinned to 64-bit two's complement and
/// denominator exponents to unsigned 16-bit, regardless of the build's
/// internal integer width.

inline void append_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
}

inline void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

inline void append_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
}

inline void append_i64(std::vector<std::uint8_t>& out, Int v) {
#ifdef TCOUNT_WIDE_INTEGERS
    if (v > Int(INT64_MAX) || v < Int(INT64_MIN))
        throw std::overflow_error("append_i64: coefficient exceeds the 64-bit wire format");
#endif
    append_u64(out, static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
}

inline void append_ring_real(std::vector<std::uint8_t>& out, const RingReal& v) {
    if (v.k() > 0xffff) throw std::overflow_error("append_ring_real: exponent exceeds 16 bits");
    append_i64(out, v.a());
    append_i64(out, v.b());
    append_u16(out, static_cast<std::uint16_t>(v.k()));
}

inline void append_cyclo(std::vector<std::uint8_t>& out, const CycloElem& v) {
    if (v.k() > 0xffff) throw std::overflow_error("append_cyclo: exponent exceeds 16 bits");
    append_i64(out, v.a());
    append_i64(out, v.b());
    append_i64(out, v.c());
    append_i64(out, v.d());
    append_u16(out, static_cast<std::uint16_t>(v.k()));
}

/// Bounds-checked little-endian reader over a byte buffer.
class WireReader {
  public:
    WireReader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}

    std::size_t remaining() const { return size_ - pos_; }
    std::size_t position() const { return pos_; }

    std::uint8_t u8() {
        need(1);
        return data_[pos_++];
    }

    std::uint16_t u16() {
        need(2);
        std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] | (data_[pos_ + 1] << 8));
        pos_ += 2;
        return v;
    }

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) v = (v << 8) | data_[pos_ + i];
        pos_ += 4;
        return v;
    }

    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | data_[pos_ + i];
        pos_ += 8;
        return v;
    }

    Int i64() { return static_cast<Int>(static_cast<std::int64_t>(u64())); }

    RingReal ring_real() {
        Int a = i64();
        Int b = i64();
        std::uint16_t k = u16();
        return RingReal(a, b, k);
    }

    void bytes(std::uint8_t* out, std::size_t count) {
        need(count);
        for (std::size_t i = 0; i < count; ++i) out[i] = data_[pos_ + i];
        pos_ += count;
    }

  private:
    void need(std::size_t count) const {
        if (pos_ + count > size_) throw std::out_of_range("WireReader: truncated input");
    }

    const std::uint8_t* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
};

}  // namespace tcount
