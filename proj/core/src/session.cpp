#include "mcl/session.hpp"

#include "mcl/errors.hpp"

namespace mcl::client {

const char* to_string(FetchOutcome o) {
    switch (o) {
        case FetchOutcome::Pending: return "pending";
        case FetchOutcome::Success: return "success";
        case FetchOutcome::NotFound: return "not_found";
        case FetchOutcome::UnsupportedMedia: return "unsupported_media";
        case FetchOutcome::ModFailed: return "mod_failed";
        case FetchOutcome::UnknownContent: return "unknown_content";
        case FetchOutcome::DeliveryFailed: return "delivery_failed";
    }
    return "?";
}

Session::Session(ContentRequest req) : req_(std::move(req)) {
    emit(request_frame());
}

Frame Session::request_frame() const { return make_request_frame(req_); }

void Session::complete(const ContentId& id, MediaType media, Bytes payload) {
    result_.outcome = FetchOutcome::Success;
    result_.item.content_id = id;
    result_.item.url = req_.url;
    result_.item.media = media;
    result_.item.payload = std::move(payload);
    result_.item.modified = req_.mod_spec.has_value() || mod_acked_;
}

void Session::on_tick(uint64_t now_ms) {
    if (now_ms - last_retry_ms_ < retry_interval_ms_) return;
    if (!response_seen_ && !done()) {
        emit(request_frame());
        last_retry_ms_ = now_ms;
    } else if (pending_mod_ && !mod_acked_) {
        emit(*pending_mod_);
        last_retry_ms_ = now_ms;
    }
}

void Session::on_frame(const Frame& f, uint64_t now_ms) {
    (void)now_ms;
    response_seen_ = true;
    if (done()) {
        // Keep re-acking duplicate data frames so a lost ack cannot wedge the
        // sender, but never touch the settled result.
        if (f.type == FrameType::Chunk) {
            ChunkHeader h = parse_chunk_header(f);
            if (flags_epoch(f.flags) == epoch_) emit(make_ack_frame(h.content_id, h.seq));
        } else if (f.type == FrameType::Content) {
            ContentHeader h = parse_content_header(f);
            if (flags_epoch(f.flags) == epoch_) emit(make_ack_frame(h.content_id, 0));
        } else if (f.type == FrameType::Ack && parse_ack_header(f).seq == kModAckSeq) {
            mod_acked_ = true;
            pending_mod_.reset();
        }
        return;
    }
    switch (f.type) {
        case FrameType::Content: {
            ContentHeader h = parse_content_header(f);
            uint8_t epoch = flags_epoch(f.flags);
            content_id_ = h.content_id;
            if (mod_pending_ && epoch == epoch_) return;  // stale pre-modification payload
            epoch_ = epoch;
            mod_pending_ = false;
            result_.bytes_received += f.payload.size();
            emit(make_ack_frame(h.content_id, 0));
            complete(h.content_id, flags_media(f.flags), f.payload);
            return;
        }
        case FrameType::Chunk: {
            ChunkHeader h = parse_chunk_header(f);
            uint8_t epoch = flags_epoch(f.flags);
            content_id_ = h.content_id;
            if (mod_pending_ && epoch == epoch_) return;  // superseded epoch, drop silently
            if (!reassembly_ || epoch != epoch_ ||
                reassembly_->content_id() != h.content_id) {
                // New delivery generation: discard stale reassembly state.
                reassembly_ = std::make_unique<modloop::Reassembly>(h.content_id, h.total);
                epoch_ = epoch;
                mod_pending_ = false;
            }
            Chunk c{h.content_id, h.seq, h.total, f.payload};
            auto step = reassembly_->integrate(c);
            ++result_.chunks_received;
            result_.bytes_received += f.payload.size();
            emit(make_ack_frame(h.content_id, h.seq));
            if (step == modloop::Reassembly::Step::Complete)
                complete(h.content_id, flags_media(f.flags), reassembly_->payload());
            return;
        }
        case FrameType::Ack: {
            AckHeader h = parse_ack_header(f);
            if (h.seq == kModAckSeq) {
                mod_acked_ = true;
                pending_mod_.reset();
            }
            return;
        }
        case FrameType::Error: {
            ErrorInfo e = parse_error_frame(f);
            result_.error_message = e.message;
            switch (e.code) {
                case ErrorCode::NotFound: result_.outcome = FetchOutcome::NotFound; break;
                case ErrorCode::UnsupportedMedia:
                    result_.outcome = FetchOutcome::UnsupportedMedia;
                    break;
                case ErrorCode::ModFailed: result_.outcome = FetchOutcome::ModFailed; break;
                case ErrorCode::UnknownContent:
                    result_.outcome = FetchOutcome::UnknownContent;
                    break;
            }
            return;
        }
        default:
            return;
    }
}

bool Session::request_modification(const ModificationSpec& spec) {
    if (!content_id_) return false;
    pending_mod_ = make_mod_request_frame(*content_id_, spec);
    emit(*pending_mod_);
    mod_pending_ = true;
    mod_acked_ = false;
    // A completed result is superseded by the fresh delivery.
    if (result_.outcome == FetchOutcome::Success) result_.outcome = FetchOutcome::Pending;
    return true;
}

std::vector<Frame> Session::take_outgoing() {
    std::vector<Frame> out;
    out.swap(outgoing_);
    return out;
}

}  // namespace mcl::client
