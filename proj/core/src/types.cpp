#include "mcl/types.hpp"

#include <cstdio>

namespace mcl {

const char* to_string(MediaType m) {
    switch (m) {
        case MediaType::Data: return "data";
        case MediaType::Graph: return "graph";
        case MediaType::Image: return "image";
        case MediaType::Voice: return "voice";
    }
    return "?";
}

std::optional<MediaType> media_from_string(const std::string& s) {
    if (s == "data") return MediaType::Data;
    if (s == "graph") return MediaType::Graph;
    if (s == "image") return MediaType::Image;
    if (s == "voice") return MediaType::Voice;
    return std::nullopt;
}

const char* to_string(LinkQuality q) {
    switch (q) {
        case LinkQuality::High: return "high";
        case LinkQuality::Medium: return "medium";
        case LinkQuality::Low: return "low";
    }
    return "?";
}

std::optional<LinkQuality> quality_from_string(const std::string& s) {
    if (s == "high") return LinkQuality::High;
    if (s == "medium") return LinkQuality::Medium;
    if (s == "low") return LinkQuality::Low;
    return std::nullopt;
}

bool transform_legal(Transform::Kind kind, MediaType media) {
    switch (kind) {
        case Transform::Kind::Truncate:
            return true;
        case Transform::Kind::ToUpper:
        case Transform::Kind::StripMarkup:
            return media == MediaType::Data;
        case Transform::Kind::DownsampleBytes:
            return media != MediaType::Data;
    }
    return false;
}

std::string id_to_hex(const ContentId& id) {
    std::string out;
    out.reserve(32);
    char buf[3];
    for (uint8_t b : id) {
        std::snprintf(buf, sizeof buf, "%02x", b);
        out += buf;
    }
    return out;
}

}  // namespace mcl
