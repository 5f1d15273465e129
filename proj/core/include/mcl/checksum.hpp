#pragma once

#include <cstddef>
#include <cstdint>

#include "mcl/types.hpp"

namespace mcl {

// CRC32, IEEE 802.3 polynomial (reflected 0xEDB88320), init and final xor
// 0xFFFFFFFF. crc32 of the empty string is 0.
uint32_t crc32(const uint8_t* data, size_t len);
inline uint32_t crc32(const Bytes& b) { return crc32(b.data(), b.size()); }

}  // namespace mcl
