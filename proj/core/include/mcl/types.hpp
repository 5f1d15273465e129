// Shared domain types for the MCL delivery stack.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mcl {

using Bytes = std::vector<uint8_t>;
using ContentId = std::array<uint8_t, 16>;

enum class MediaType : uint8_t { Data = 0, Graph = 1, Image = 2, Voice = 3 };

// Shared three-level scale used both for link quality reports and for a
// device's nominal connection class.
enum class LinkQuality : uint8_t { High = 0, Medium = 1, Low = 2 };

const char* to_string(MediaType m);
std::optional<MediaType> media_from_string(const std::string& s);
const char* to_string(LinkQuality q);
std::optional<LinkQuality> quality_from_string(const std::string& s);

struct DeviceProfile {
    std::string device_id;
    uint32_t screen_w = 1;
    uint32_t screen_h = 1;
    std::set<MediaType> supported_media;
    uint32_t max_content_bytes = 1;
    std::string os_tag;
    LinkQuality connection_class = LinkQuality::Medium;

    bool valid() const {
        return !supported_media.empty() && max_content_bytes >= 1 &&
               screen_w >= 1 && screen_h >= 1;
    }
};

struct NetworkStatus {
    LinkQuality quality = LinkQuality::High;
    uint32_t last_rtt_ms = 0;
    uint8_t last_loss_pct = 0;  // 0..100
};

struct Transform {
    enum class Kind : uint8_t {
        Truncate = 1,         // param = max_bytes, any media
        ToUpper = 2,          // Data only
        StripMarkup = 3,      // Data only
        DownsampleBytes = 4,  // param = keep_every_n >= 1, Graph/Image/Voice
    };
    Kind kind = Kind::Truncate;
    uint32_t param = 0;

    bool operator==(const Transform&) const = default;
};

bool transform_legal(Transform::Kind kind, MediaType media);

struct ModificationSpec {
    std::vector<Transform> transforms;  // non-empty, applied left to right

    bool operator==(const ModificationSpec&) const = default;
};

struct ContentRequest {
    std::string url;
    DeviceProfile profile;
    NetworkStatus net;
    std::optional<ModificationSpec> mod_spec;
};

struct ContentItem {
    ContentId content_id{};
    std::string url;
    MediaType media = MediaType::Data;
    Bytes payload;
    uint64_t created_at = 0;  // logical timestamp
    bool modified = false;
};

struct Chunk {
    ContentId content_id{};
    uint32_t seq = 0;    // 0-based, < total
    uint32_t total = 1;  // >= 1
    Bytes payload;
};

std::string id_to_hex(const ContentId& id);

inline Bytes to_bytes(const std::string& s) { return Bytes(s.begin(), s.end()); }
inline std::string to_string(const Bytes& b) { return std::string(b.begin(), b.end()); }

}  // namespace mcl
