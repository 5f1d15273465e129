// Binary wire frame and its codec.
//
// Layout (big-endian):
//   magic "MCL1" | version u8 = 0x01 | type u8 | flags u8 | header_len u16 |
//   payload_len u32 | header bytes | payload bytes | crc32 u32
// The CRC covers everything from the magic through the payload.
//
// For Content and Chunk frames the flags byte packs the delivery epoch in the
// low 6 bits and the media type in the top 2 bits.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcl/types.hpp"

namespace mcl {

enum class FrameType : uint8_t {
    Request = 0x01,
    Content = 0x02,
    Chunk = 0x03,
    Ack = 0x04,
    ModRequest = 0x05,
    Error = 0x06,
    NetStatus = 0x07,
};

enum class ErrorCode : uint16_t {
    NotFound = 1,
    UnsupportedMedia = 2,
    ModFailed = 3,
    UnknownContent = 4,
};

struct Frame {
    FrameType type = FrameType::Request;
    uint8_t flags = 0;
    Bytes header;   // type-specific record
    Bytes payload;

    bool operator==(const Frame&) const = default;
};

constexpr size_t kFrameFixedLen = 13;  // magic..payload_len
constexpr size_t kFrameTrailerLen = 4; // crc32
constexpr uint32_t kModAckSeq = 0xFFFFFFFF;  // Ack.seq for mod-request acknowledgment

Bytes encode_frame(const Frame& f);
Frame decode_frame(const uint8_t* data, size_t len);
inline Frame decode_frame(const Bytes& b) { return decode_frame(b.data(), b.size()); }

// Parses just the total frame length from a fixed-size header prefix; used by
// the stream deframer. Returns nullopt if fewer than kFrameFixedLen bytes.
std::optional<size_t> frame_total_len(const uint8_t* data, size_t len);

// Type-specific header records.
struct ChunkHeader {
    ContentId content_id{};
    uint32_t seq = 0;
    uint32_t total = 1;
};
struct AckHeader {
    ContentId content_id{};
    uint32_t seq = 0;
};
struct ContentHeader {
    ContentId content_id{};
};
struct ErrorInfo {
    ErrorCode code = ErrorCode::NotFound;
    std::string message;
};
struct ModRequestHeader {
    ContentId content_id{};
    ModificationSpec spec;
};

uint8_t pack_flags(MediaType media, uint8_t epoch);
MediaType flags_media(uint8_t flags);
uint8_t flags_epoch(uint8_t flags);

Frame make_request_frame(const ContentRequest& req);
ContentRequest parse_request_frame(const Frame& f);

Frame make_content_frame(const ContentItem& item, uint8_t epoch);
ContentHeader parse_content_header(const Frame& f);

Frame make_chunk_frame(const Chunk& c, MediaType media, uint8_t epoch);
ChunkHeader parse_chunk_header(const Frame& f);

Frame make_ack_frame(const ContentId& id, uint32_t seq);
AckHeader parse_ack_header(const Frame& f);

Frame make_error_frame(ErrorCode code, const std::string& message);
ErrorInfo parse_error_frame(const Frame& f);

Frame make_mod_request_frame(const ContentId& id, const ModificationSpec& spec);
ModRequestHeader parse_mod_request_frame(const Frame& f);

Frame make_net_status_frame(const NetworkStatus& ns);
NetworkStatus parse_net_status_frame(const Frame& f);

}  // namespace mcl
