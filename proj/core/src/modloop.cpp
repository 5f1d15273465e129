#include "mcl/modloop.hpp"

#include <cctype>

#include "mcl/errors.hpp"

namespace mcl::modloop {

Reassembly::Reassembly(const ContentId& id, uint32_t total) : id_(id), total_(total) {}

Reassembly::Step Reassembly::integrate(const Chunk& c) {
    if (c.content_id != id_ || c.total != total_)
        throw ChunkMismatch("chunk does not belong to this reassembly");
    if (c.seq >= total_)
        throw ChunkMismatch("chunk seq out of range");
    auto it = received_.find(c.seq);
    if (it != received_.end()) {
        if (it->second != c.payload)
            throw PayloadConflict("conflicting payloads for seq " + std::to_string(c.seq));
        return complete() ? Step::Complete : Step::Pending;
    }
    received_[c.seq] = c.payload;
    return complete() ? Step::Complete : Step::Pending;
}

Bytes Reassembly::payload() const {
    Bytes out;
    for (const auto& [seq, part] : received_) out.insert(out.end(), part.begin(), part.end());
    return out;
}

namespace {

Bytes apply_one(const Transform& t, const Bytes& in, MediaType media) {
    if (!transform_legal(t.kind, media))
        throw IllegalTransform(t.kind, media, "transform not legal for this media type");
    switch (t.kind) {
        case Transform::Kind::Truncate: {
            Bytes out = in;
            if (out.size() > t.param) out.resize(t.param);
            return out;
        }
        case Transform::Kind::ToUpper: {
            Bytes out = in;
            for (uint8_t& b : out) b = static_cast<uint8_t>(std::toupper(b));
            return out;
        }
        case Transform::Kind::StripMarkup: {
            // Drops every <...> span; an unterminated tag is dropped to EOF.
            Bytes out;
            bool in_tag = false;
            for (uint8_t b : in) {
                if (in_tag) {
                    if (b == '>') in_tag = false;
                } else if (b == '<') {
                    in_tag = true;
                } else {
                    out.push_back(b);
                }
            }
            return out;
        }
        case Transform::Kind::DownsampleBytes: {
            uint32_t n = t.param == 0 ? 1 : t.param;
            Bytes out;
            out.reserve(in.size() / n + 1);
            for (size_t i = 0; i < in.size(); i += n) out.push_back(in[i]);
            return out;
        }
    }
    return in;
}

// Checkable postconditions per transform kind; DownsampleBytes leaves no
// payload-local evidence, so it is vacuously satisfied.
bool postcondition_holds(const Transform& t, const Bytes& payload) {
    switch (t.kind) {
        case Transform::Kind::Truncate:
            return payload.size() <= t.param;
        case Transform::Kind::ToUpper:
            for (uint8_t b : payload)
                if (std::islower(b)) return false;
            return true;
        case Transform::Kind::StripMarkup:
            for (uint8_t b : payload)
                if (b == '<' || b == '>') return false;
            return true;
        case Transform::Kind::DownsampleBytes:
            return true;
    }
    return true;
}

}  // namespace

ContentItem modify(const ContentItem& content, const ModificationSpec& spec) {
    ContentItem out = content;
    for (const Transform& t : spec.transforms) out.payload = apply_one(t, out.payload, out.media);
    out.modified = true;
    return out;
}

Decision decide(const ContentItem& content, const ContentRequest& req) {
    if (content.url != req.url)
        return Decision::rejected(Decision::Reason::WrongContent);
    if (!req.profile.supported_media.contains(content.media))
        return Decision::rejected(Decision::Reason::UnsupportedMedia);
    if (content.payload.size() > req.profile.max_content_bytes)
        return Decision::rejected(Decision::Reason::TooLarge);
    if (req.mod_spec)
        for (const Transform& t : req.mod_spec->transforms)
            if (!postcondition_holds(t, content.payload))
                return Decision::rejected(Decision::Reason::SpecUnsatisfied);
    return Decision::accepted();
}

ModLoopResult run_mod_loop(const ContentItem& content, const ContentRequest& req,
                           uint32_t max_mod_retries) {
    ModLoopResult result;
    std::optional<ModificationSpec> working = req.mod_spec;
    uint64_t truncate_bound = req.profile.max_content_bytes;
    for (uint32_t attempt = 0;; ++attempt) {
        ContentItem candidate;
        try {
            candidate = route(working) == Route::Modifier ? modify(content, *working) : content;
        } catch (const IllegalTransform& e) {
            result.error = ErrorInfo{ErrorCode::ModFailed, e.what()};
            return result;
        }
        Decision d = decide(candidate, req);
        ++result.decide_calls;
        if (d.accept) {
            result.ok = true;
            result.item = std::move(candidate);
            result.applied_spec = working;
            return result;
        }
        if (d.reason != Decision::Reason::TooLarge || attempt >= max_mod_retries) {
            const char* why = "content rejected";
            switch (d.reason) {
                case Decision::Reason::WrongContent: why = "wrong content"; break;
                case Decision::Reason::UnsupportedMedia: why = "unsupported media"; break;
                case Decision::Reason::TooLarge: why = "too large after retries"; break;
                case Decision::Reason::SpecUnsatisfied: why = "modification spec unsatisfied"; break;
            }
            result.error = ErrorInfo{ErrorCode::ModFailed, why};
            return result;
        }
        if (!working) working = ModificationSpec{};
        working->transforms.push_back(
            Transform{Transform::Kind::Truncate, static_cast<uint32_t>(truncate_bound)});
        truncate_bound /= 2;
    }
}

void refragment_and_send(const ContentItem& content, uint32_t chunk_size, uint8_t epoch,
                         Link& link, uint64_t now_ms, transport::MsgBuffer* offline) {
    server::DeliveryPlan plan;
    plan.item = content;
    plan.chunk_size = chunk_size;
    for (Frame& f : transport::plan_frames(plan, epoch))
        transport::send_or_buffer(link, offline, encode_frame(f), now_ms);
}

}  // namespace mcl::modloop
