#include "mcl/frame.hpp"

#include "mcl/byteio.hpp"
#include "mcl/checksum.hpp"
#include "mcl/errors.hpp"

namespace mcl {
namespace {

constexpr char kMagic[4] = {'M', 'C', 'L', '1'};
constexpr uint8_t kVersion = 0x01;

void check_type(const Frame& f, FrameType want) {
    if (f.type != want)
        throw CodecError(CodecError::Kind::BadMagic, 0, "wrong frame type for header parse");
}

void put_str16(Bytes& out, const std::string& s) {
    if (s.size() > 0xFFFF)
        throw CodecError(CodecError::Kind::Oversize, 0, "string exceeds u16 length");
    put_u16(out, static_cast<uint16_t>(s.size()));
    put_bytes(out, reinterpret_cast<const uint8_t*>(s.data()), s.size());
}

std::string get_str16(ByteReader& r) { return r.str(r.u16()); }

void put_spec(Bytes& out, const ModificationSpec& spec) {
    put_u8(out, static_cast<uint8_t>(spec.transforms.size()));
    for (const Transform& t : spec.transforms) {
        put_u8(out, static_cast<uint8_t>(t.kind));
        put_u32(out, t.param);
    }
}

ModificationSpec get_spec(ByteReader& r) {
    ModificationSpec spec;
    uint8_t n = r.u8();
    spec.transforms.reserve(n);
    for (uint8_t i = 0; i < n; ++i) {
        Transform t;
        t.kind = static_cast<Transform::Kind>(r.u8());
        t.param = r.u32();
        spec.transforms.push_back(t);
    }
    return spec;
}

}  // namespace

Bytes encode_frame(const Frame& f) {
    if (f.payload.size() > 0xFFFFFFFFull)
        throw CodecError(CodecError::Kind::Oversize, 0, "payload exceeds u32 length");
    if (f.header.size() > 0xFFFF)
        throw CodecError(CodecError::Kind::Oversize, 0, "header exceeds u16 length");
    Bytes out;
    out.reserve(kFrameFixedLen + f.header.size() + f.payload.size() + kFrameTrailerLen);
    put_bytes(out, reinterpret_cast<const uint8_t*>(kMagic), 4);
    put_u8(out, kVersion);
    put_u8(out, static_cast<uint8_t>(f.type));
    put_u8(out, f.flags);
    put_u16(out, static_cast<uint16_t>(f.header.size()));
    put_u32(out, static_cast<uint32_t>(f.payload.size()));
    put_bytes(out, f.header.data(), f.header.size());
    put_bytes(out, f.payload.data(), f.payload.size());
    put_u32(out, crc32(out));
    return out;
}

std::optional<size_t> frame_total_len(const uint8_t* data, size_t len) {
    if (len < kFrameFixedLen) return std::nullopt;
    uint16_t header_len = (uint16_t(data[7]) << 8) | data[8];
    uint32_t payload_len = (uint32_t(data[9]) << 24) | (uint32_t(data[10]) << 16) |
                           (uint32_t(data[11]) << 8) | data[12];
    return kFrameFixedLen + header_len + payload_len + kFrameTrailerLen;
}

Frame decode_frame(const uint8_t* data, size_t len) {
    if (len < kFrameFixedLen + kFrameTrailerLen)
        throw CodecError(CodecError::Kind::Truncated, len, "frame shorter than fixed layout");
    for (size_t i = 0; i < 4; ++i)
        if (data[i] != static_cast<uint8_t>(kMagic[i]))
            throw CodecError(CodecError::Kind::BadMagic, i, "bad magic");
    if (data[4] != kVersion)
        throw CodecError(CodecError::Kind::BadVersion, 4, "unsupported version");
    uint8_t type = data[5];
    if (type < 0x01 || type > 0x07)
        throw CodecError(CodecError::Kind::BadMagic, 5, "unknown frame type");
    ByteReader r(data + 7, len - 7);
    uint16_t header_len = r.u16();
    uint32_t payload_len = r.u32();
    size_t total = kFrameFixedLen + size_t(header_len) + payload_len + kFrameTrailerLen;
    if (len < total)
        throw CodecError(CodecError::Kind::Truncated, len, "frame body truncated");
    uint32_t want = crc32(data, total - kFrameTrailerLen);
    size_t crc_off = total - kFrameTrailerLen;
    uint32_t got = (uint32_t(data[crc_off]) << 24) | (uint32_t(data[crc_off + 1]) << 16) |
                   (uint32_t(data[crc_off + 2]) << 8) | data[crc_off + 3];
    if (want != got)
        throw CodecError(CodecError::Kind::ChecksumMismatch, crc_off, "crc mismatch");
    Frame f;
    f.type = static_cast<FrameType>(type);
    f.flags = data[6];
    f.header.assign(data + kFrameFixedLen, data + kFrameFixedLen + header_len);
    f.payload.assign(data + kFrameFixedLen + header_len,
                     data + kFrameFixedLen + header_len + payload_len);
    return f;
}

uint8_t pack_flags(MediaType media, uint8_t epoch) {
    return static_cast<uint8_t>((static_cast<uint8_t>(media) << 6) | (epoch & 0x3F));
}
MediaType flags_media(uint8_t flags) { return static_cast<MediaType>(flags >> 6); }
uint8_t flags_epoch(uint8_t flags) { return flags & 0x3F; }

Frame make_request_frame(const ContentRequest& req) {
    Frame f;
    f.type = FrameType::Request;
    Bytes& h = f.header;
    put_str16(h, req.url);
    put_str16(h, req.profile.device_id);
    put_u32(h, req.profile.screen_w);
    put_u32(h, req.profile.screen_h);
    uint8_t mask = 0;
    for (MediaType m : req.profile.supported_media) mask |= uint8_t(1) << static_cast<uint8_t>(m);
    put_u8(h, mask);
    put_u32(h, req.profile.max_content_bytes);
    put_str16(h, req.profile.os_tag);
    put_u8(h, static_cast<uint8_t>(req.profile.connection_class));
    put_u8(h, static_cast<uint8_t>(req.net.quality));
    put_u32(h, req.net.last_rtt_ms);
    put_u8(h, req.net.last_loss_pct);
    put_u8(h, req.mod_spec ? 1 : 0);
    if (req.mod_spec) put_spec(h, *req.mod_spec);
    return f;
}

ContentRequest parse_request_frame(const Frame& f) {
    check_type(f, FrameType::Request);
    ByteReader r(f.header);
    ContentRequest req;
    req.url = get_str16(r);
    req.profile.device_id = get_str16(r);
    req.profile.screen_w = r.u32();
    req.profile.screen_h = r.u32();
    uint8_t mask = r.u8();
    for (uint8_t m = 0; m < 4; ++m)
        if (mask & (uint8_t(1) << m)) req.profile.supported_media.insert(static_cast<MediaType>(m));
    req.profile.max_content_bytes = r.u32();
    req.profile.os_tag = get_str16(r);
    req.profile.connection_class = static_cast<LinkQuality>(r.u8());
    req.net.quality = static_cast<LinkQuality>(r.u8());
    req.net.last_rtt_ms = r.u32();
    req.net.last_loss_pct = r.u8();
    if (r.u8()) req.mod_spec = get_spec(r);
    return req;
}

Frame make_content_frame(const ContentItem& item, uint8_t epoch) {
    Frame f;
    f.type = FrameType::Content;
    f.flags = pack_flags(item.media, epoch);
    put_bytes(f.header, item.content_id.data(), 16);
    f.payload = item.payload;
    return f;
}

ContentHeader parse_content_header(const Frame& f) {
    check_type(f, FrameType::Content);
    ByteReader r(f.header);
    return ContentHeader{r.id()};
}

Frame make_chunk_frame(const Chunk& c, MediaType media, uint8_t epoch) {
    Frame f;
    f.type = FrameType::Chunk;
    f.flags = pack_flags(media, epoch);
    put_bytes(f.header, c.content_id.data(), 16);
    put_u32(f.header, c.seq);
    put_u32(f.header, c.total);
    f.payload = c.payload;
    return f;
}

ChunkHeader parse_chunk_header(const Frame& f) {
    check_type(f, FrameType::Chunk);
    ByteReader r(f.header);
    ChunkHeader h;
    h.content_id = r.id();
    h.seq = r.u32();
    h.total = r.u32();
    return h;
}

Frame make_ack_frame(const ContentId& id, uint32_t seq) {
    Frame f;
    f.type = FrameType::Ack;
    put_bytes(f.header, id.data(), 16);
    put_u32(f.header, seq);
    return f;
}

AckHeader parse_ack_header(const Frame& f) {
    check_type(f, FrameType::Ack);
    ByteReader r(f.header);
    AckHeader h;
    h.content_id = r.id();
    h.seq = r.u32();
    return h;
}

Frame make_error_frame(ErrorCode code, const std::string& message) {
    Frame f;
    f.type = FrameType::Error;
    put_u16(f.header, static_cast<uint16_t>(code));
    f.payload = to_bytes(message);
    return f;
}

ErrorInfo parse_error_frame(const Frame& f) {
    check_type(f, FrameType::Error);
    ByteReader r(f.header);
    ErrorInfo e;
    e.code = static_cast<ErrorCode>(r.u16());
    e.message = to_string(f.payload);
    return e;
}

Frame make_mod_request_frame(const ContentId& id, const ModificationSpec& spec) {
    Frame f;
    f.type = FrameType::ModRequest;
    put_bytes(f.header, id.data(), 16);
    put_spec(f.header, spec);
    return f;
}

ModRequestHeader parse_mod_request_frame(const Frame& f) {
    check_type(f, FrameType::ModRequest);
    ByteReader r(f.header);
    ModRequestHeader h;
    h.content_id = r.id();
    h.spec = get_spec(r);
    return h;
}

Frame make_net_status_frame(const NetworkStatus& ns) {
    Frame f;
    f.type = FrameType::NetStatus;
    put_u8(f.header, static_cast<uint8_t>(ns.quality));
    put_u32(f.header, ns.last_rtt_ms);
    put_u8(f.header, ns.last_loss_pct);
    return f;
}

NetworkStatus parse_net_status_frame(const Frame& f) {
    check_type(f, FrameType::NetStatus);
    ByteReader r(f.header);
    NetworkStatus ns;
    ns.quality = static_cast<LinkQuality>(r.u8());
    ns.last_rtt_ms = r.u32();
    ns.last_loss_pct = r.u8();
    return ns;
}

}  // namespace mcl
