#include "mcl/endpoint.hpp"

namespace mcl::server {

Endpoint::Endpoint(Warehouse& store, EndpointConfig cfg) : store_(store), cfg_(cfg) {}

void Endpoint::on_frame(const Frame& f, uint64_t now_ms) {
    switch (f.type) {
        case FrameType::Request: handle_request_frame(f, now_ms); break;
        case FrameType::Ack: handle_ack(f, now_ms); break;
        case FrameType::ModRequest: handle_mod_request(f, now_ms); break;
        case FrameType::NetStatus: break;  // informational
        default: break;                    // server never consumes data frames
    }
}

void Endpoint::handle_request_frame(const Frame& f, uint64_t now_ms) {
    ContentRequest req = parse_request_frame(f);
    // A retransmitted request for an in-flight delivery is a duplicate; the
    // sender is already working on it.
    if (auto item = store_.lookup(req.url)) {
        auto existing = deliveries_.find(item->content_id);
        if (existing != deliveries_.end() && existing->second.req.url == req.url &&
            existing->second.sender->status() == transport::Sender::Status::InFlight)
            return;
    }
    log_.push_back(RequestLog{req.url, "", 0, 0});
    size_t log_index = log_.size() - 1;

    auto planned = handle_request(req, store_);
    if (auto* err = std::get_if<ErrorInfo>(&planned)) {
        log_[log_index].outcome =
            err->code == ErrorCode::NotFound ? "not_found" : "unsupported_media";
        emit(make_error_frame(err->code, err->message));
        return;
    }
    auto& plan = std::get<DeliveryPlan>(planned);

    // The modification layer sits between the warehouse and the transport.
    auto mod = modloop::run_mod_loop(plan.item, req, cfg_.max_mod_retries);
    if (!mod.ok) {
        log_[log_index].outcome = "mod_failed";
        emit(make_error_frame(mod.error.code, mod.error.message));
        return;
    }

    Delivery d;
    d.req = std::move(req);
    d.original = std::move(plan.item);
    d.chunk_size = plan.chunk_size;
    d.epoch = 0;
    d.log_index = log_index;
    ContentId id = d.original.content_id;
    DeliveryPlan send_plan{std::move(mod.item), d.chunk_size, std::nullopt};
    d.sender = std::make_unique<transport::Sender>(transport::plan_frames(send_plan, d.epoch),
                                                   cfg_.arq);
    log_[log_index].chunks = d.sender->frame_count();
    auto prior = deliveries_.find(id);
    if (prior != deliveries_.end())
        finished_retransmissions_ += prior->second.sender->retransmissions();
    auto [it, inserted] = deliveries_.insert_or_assign(id, std::move(d));
    start_delivery(it->second, now_ms);
}

void Endpoint::start_delivery(Delivery& d, uint64_t now_ms) {
    d.sender->on_tick(now_ms, [&](const Frame& f) { emit(f); });
}

void Endpoint::handle_ack(const Frame& f, uint64_t now_ms) {
    AckHeader h = parse_ack_header(f);
    if (h.seq == kModAckSeq) return;
    auto it = deliveries_.find(h.content_id);
    if (it == deliveries_.end()) return;
    Delivery& d = it->second;
    d.sender->on_ack(h.seq);
    log_[d.log_index].retransmissions = d.sender->retransmissions();
    if (d.sender->status() == transport::Sender::Status::Done) log_[d.log_index].outcome = "ok";
    (void)now_ms;
}

void Endpoint::handle_mod_request(const Frame& f, uint64_t now_ms) {
    ModRequestHeader h = parse_mod_request_frame(f);
    auto it = deliveries_.find(h.content_id);
    if (it == deliveries_.end()) {
        emit(make_error_frame(ErrorCode::UnknownContent,
                              "no delivery for content " + id_to_hex(h.content_id)));
        return;
    }
    Delivery& d = it->second;
    // Supersede whatever is still in flight and rerun the loop on the
    // original warehouse bytes with the new spec.
    d.sender->abort();
    ContentRequest req = d.req;
    req.mod_spec = h.spec;
    auto mod = modloop::run_mod_loop(d.original, req, cfg_.max_mod_retries);
    if (!mod.ok) {
        log_[d.log_index].outcome = "mod_failed";
        emit(make_error_frame(mod.error.code, mod.error.message));
        deliveries_.erase(it);
        return;
    }
    d.req = std::move(req);
    d.epoch = static_cast<uint8_t>((d.epoch + 1) & 0x3F);
    finished_retransmissions_ += d.sender->retransmissions();
    DeliveryPlan send_plan{std::move(mod.item), d.chunk_size, std::nullopt};
    d.sender = std::make_unique<transport::Sender>(transport::plan_frames(send_plan, d.epoch),
                                                   cfg_.arq);
    log_[d.log_index].chunks += d.sender->frame_count();
    emit(make_ack_frame(h.content_id, kModAckSeq));
    start_delivery(d, now_ms);
}

void Endpoint::on_tick(uint64_t now_ms) {
    for (auto& [id, d] : deliveries_) {
        if (d.sender->status() != transport::Sender::Status::InFlight) continue;
        d.sender->on_tick(now_ms, [&](const Frame& f) { emit(f); });
        log_[d.log_index].retransmissions = d.sender->retransmissions();
        if (d.sender->status() == transport::Sender::Status::Done)
            log_[d.log_index].outcome = "ok";
        else if (d.sender->status() == transport::Sender::Status::Failed)
            log_[d.log_index].outcome = "delivery_failed";
    }
}

std::vector<Frame> Endpoint::take_outgoing() {
    std::vector<Frame> out;
    out.swap(outgoing_);
    return out;
}

uint32_t Endpoint::total_retransmissions() const {
    uint32_t n = finished_retransmissions_;
    for (const auto& [id, d] : deliveries_) n += d.sender->retransmissions();
    return n;
}

bool Endpoint::idle() const {
    for (const auto& [id, d] : deliveries_)
        if (d.sender->status() == transport::Sender::Status::InFlight) return false;
    return true;
}

}  // namespace mcl::server
