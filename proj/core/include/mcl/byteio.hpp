// Big-endian byte packing helpers shared by the frame codec and file formats.
#pragma once

#include <cstdint>
#include <cstring>
#include <string>

#include "mcl/errors.hpp"
#include "mcl/types.hpp"

namespace mcl {

inline void put_u8(Bytes& out, uint8_t v) { out.push_back(v); }

inline void put_u16(Bytes& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

inline void put_u32(Bytes& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

inline void put_u64(Bytes& out, uint64_t v) {
    put_u32(out, static_cast<uint32_t>(v >> 32));
    put_u32(out, static_cast<uint32_t>(v));
}

inline void put_bytes(Bytes& out, const uint8_t* data, size_t n) {
    out.insert(out.end(), data, data + n);
}

// Cursor-style reader; throws CodecError::Truncated past the end.
class ByteReader {
public:
    ByteReader(const uint8_t* data, size_t len) : data_(data), len_(len) {}
    explicit ByteReader(const Bytes& b) : ByteReader(b.data(), b.size()) {}

    size_t pos() const { return pos_; }
    size_t remaining() const { return len_ - pos_; }

    uint8_t u8() { need(1); return data_[pos_++]; }
    uint16_t u16() {
        need(2);
        uint16_t v = (uint16_t(data_[pos_]) << 8) | data_[pos_ + 1];
        pos_ += 2;
        return v;
    }
    uint32_t u32() {
        need(4);
        uint32_t v = (uint32_t(data_[pos_]) << 24) | (uint32_t(data_[pos_ + 1]) << 16) |
                     (uint32_t(data_[pos_ + 2]) << 8) | data_[pos_ + 3];
        pos_ += 4;
        return v;
    }
    uint64_t u64() {
        uint64_t hi = u32();
        return (hi << 32) | u32();
    }
    Bytes bytes(size_t n) {
        need(n);
        Bytes b(data_ + pos_, data_ + pos_ + n);
        pos_ += n;
        return b;
    }
    std::string str(size_t n) {
        need(n);
        std::string s(reinterpret_cast<const char*>(data_ + pos_), n);
        pos_ += n;
        return s;
    }
    ContentId id() {
        need(16);
        ContentId cid;
        std::memcpy(cid.data(), data_ + pos_, 16);
        pos_ += 16;
        return cid;
    }

private:
    void need(size_t n) const {
        if (len_ - pos_ < n)
            throw CodecError(CodecError::Kind::Truncated, pos_,
                             "truncated input at offset " + std::to_string(pos_));
    }
    const uint8_t* data_;
    size_t len_;
    size_t pos_ = 0;
};

}  // namespace mcl
