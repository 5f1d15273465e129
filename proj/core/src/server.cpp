#include "mcl/server.hpp"

namespace mcl::server {

uint32_t choose_chunk_size(const NetworkStatus& net) {
    switch (net.quality) {
        case LinkQuality::High: return 8192;
        case LinkQuality::Medium: return 4096;
        case LinkQuality::Low: return 1024;
    }
    return 4096;
}

std::variant<DeliveryPlan, ErrorInfo> handle_request(const ContentRequest& req,
                                                     const Warehouse& w) {
    auto item = w.lookup(req.url);
    if (!item)
        return ErrorInfo{ErrorCode::NotFound, "no content for url: " + req.url};
    // No transform changes the media type, so an unsupported media is
    // unrecoverable regardless of the mod spec.
    if (!req.profile.supported_media.contains(item->media))
        return ErrorInfo{ErrorCode::UnsupportedMedia,
                         std::string("device does not support media: ") + to_string(item->media)};
    DeliveryPlan plan;
    plan.item = std::move(*item);
    plan.chunk_size = choose_chunk_size(req.net);
    plan.mod_spec = req.mod_spec;
    return plan;
}

}  // namespace mcl::server
