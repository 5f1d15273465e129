#include "mcl/transport.hpp"

namespace mcl::transport {

std::vector<Chunk> fragment(const Bytes& payload, uint32_t chunk_size, const ContentId& id) {
    std::vector<Chunk> out;
    size_t len = payload.size();
    uint32_t total = len == 0 ? 1 : static_cast<uint32_t>((len + chunk_size - 1) / chunk_size);
    out.reserve(total);
    for (uint32_t seq = 0; seq < total; ++seq) {
        Chunk c;
        c.content_id = id;
        c.seq = seq;
        c.total = total;
        size_t off = size_t(seq) * chunk_size;
        size_t n = std::min<size_t>(chunk_size, len - off);
        if (len > 0) c.payload.assign(payload.begin() + off, payload.begin() + off + n);
        out.push_back(std::move(c));
    }
    return out;
}

bool MsgBuffer::push(Bytes frame) {
    if (queue_.size() >= capacity_) {
        ++rejected_;
        return false;
    }
    queue_.push_back(std::move(frame));
    ++total_buffered_;
    return true;
}

std::optional<Bytes> MsgBuffer::pop() {
    if (queue_.empty()) return std::nullopt;
    Bytes f = std::move(queue_.front());
    queue_.pop_front();
    return f;
}

void MsgBuffer::push_front(Bytes frame) { queue_.push_front(std::move(frame)); }

SendDisposition send_or_buffer(Link& link, MsgBuffer* buf, Bytes frame, uint64_t now_ms) {
    if (link.state(now_ms) == LinkState::Up) {
        link.send(std::move(frame), now_ms);
        return SendDisposition::Sent;
    }
    if (buf && buf->push(std::move(frame))) return SendDisposition::Buffered;
    return SendDisposition::Rejected;
}

size_t flush_on_reconnect(MsgBuffer& buf, Link& link, uint64_t now_ms) {
    size_t flushed = 0;
    while (auto frame = buf.pop()) {
        if (!link.send(*frame, now_ms)) {
            buf.push_front(std::move(*frame));
            break;
        }
        ++flushed;
    }
    return flushed;
}

Sender::Sender(std::vector<Frame> frames, ArqConfig cfg)
    : frames_(std::move(frames)), acked_(frames_.size(), false), cfg_(cfg) {}

void Sender::on_tick(uint64_t now_ms, const Emit& emit) {
    if (status_ != Status::InFlight) return;
    // Retransmit timed-out chunks first.
    for (auto& [seq, flight] : in_flight_) {
        if (now_ms - flight.last_send < cfg_.timeout_ms) continue;
        if (flight.retries >= cfg_.max_retries) {
            status_ = Status::Failed;
            failed_seq_ = seq;
            return;
        }
        ++flight.retries;
        flight.last_send = now_ms;
        ++retransmissions_;
        ++data_sends_;
        emit(frames_[seq]);
    }
    // Then admit new chunks while the window has room.
    while (in_flight_.size() < cfg_.window_size && next_new_ < frames_.size()) {
        uint32_t seq = next_new_++;
        in_flight_[seq] = Flight{now_ms, 0};
        ++data_sends_;
        emit(frames_[seq]);
    }
    if (frames_.empty()) status_ = Status::Done;
}

void Sender::on_ack(uint32_t seq) {
    if (status_ != Status::InFlight) return;
    if (seq >= frames_.size() || acked_[seq]) return;
    acked_[seq] = true;
    ++acked_count_;
    in_flight_.erase(seq);
    if (acked_count_ == frames_.size()) status_ = Status::Done;
}

void Sender::abort() {
    if (status_ == Status::InFlight) status_ = Status::Failed;
    in_flight_.clear();
}

std::vector<Frame> plan_frames(const server::DeliveryPlan& plan, uint8_t epoch) {
    std::vector<Frame> out;
    const ContentItem& item = plan.item;
    if (item.payload.size() <= plan.chunk_size) {
        out.push_back(make_content_frame(item, epoch));
    } else {
        for (const Chunk& c : fragment(item.payload, plan.chunk_size, item.content_id))
            out.push_back(make_chunk_frame(c, item.media, epoch));
    }
    return out;
}

void dispatch(const server::DeliveryPlan& plan, Link& link, uint64_t now_ms, MsgBuffer* offline) {
    for (Frame& f : plan_frames(plan, 0))
        send_or_buffer(link, offline, encode_frame(f), now_ms);
}

ReliableResult send_reliable(const std::vector<Chunk>& chunks, MediaType media, uint8_t epoch,
                             Link& link, const AckSource& acks, ArqConfig cfg,
                             uint64_t start_ms, uint64_t tick_ms, MsgBuffer* offline) {
    std::vector<Frame> frames;
    frames.reserve(chunks.size());
    for (const Chunk& c : chunks) frames.push_back(make_chunk_frame(c, media, epoch));
    Sender sender(std::move(frames), cfg);

    uint64_t now = start_ms;
    LinkState prev = link.state(now);
    MsgBuffer fallback(256);
    MsgBuffer* buf = offline ? offline : &fallback;
    while (sender.status() == Sender::Status::InFlight) {
        LinkState cur = link.state(now);
        if (prev == LinkState::Down && cur == LinkState::Up)
            flush_on_reconnect(*buf, link, now);
        prev = cur;
        for (uint32_t seq : acks(now)) sender.on_ack(seq);
        sender.on_tick(now, [&](const Frame& f) {
            send_or_buffer(link, buf, encode_frame(f), now);
        });
        now += tick_ms;
    }
    ReliableResult r;
    r.ok = sender.status() == Sender::Status::Done;
    r.failed_seq = sender.failed_seq();
    r.data_sends = sender.data_sends();
    r.retransmissions = sender.retransmissions();
    r.end_ms = now;
    return r;
}

}  // namespace mcl::transport
