// Coordination layer: size-based dispatch, fragmentation, sliding-window ARQ,
// and the offline message buffer.
#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "mcl/frame.hpp"
#include "mcl/link.hpp"
#include "mcl/server.hpp"
#include "mcl/types.hpp"

namespace mcl::transport {

// total = ceil(len / chunk_size); an empty payload still yields one chunk so
// the receiver gets a positive completion signal.
std::vector<Chunk> fragment(const Bytes& payload, uint32_t chunk_size, const ContentId& id);

// FIFO store-and-forward buffer for frames refused while the link is down.
// Overflow rejects the incoming frame, never already-queued traffic.
class MsgBuffer {
public:
    explicit MsgBuffer(size_t capacity = 256) : capacity_(capacity) {}

    bool push(Bytes frame);  // false = BufferFull, frame rejected
    std::optional<Bytes> pop();
    void push_front(Bytes frame);
    size_t size() const { return queue_.size(); }
    size_t capacity() const { return capacity_; }
    uint64_t rejected() const { return rejected_; }
    uint64_t total_buffered() const { return total_buffered_; }

private:
    std::deque<Bytes> queue_;
    size_t capacity_;
    uint64_t rejected_ = 0;
    uint64_t total_buffered_ = 0;
};

enum class SendDisposition { Sent, Buffered, Rejected };

// A frame goes on the live link or into the buffer, never both.
SendDisposition send_or_buffer(Link& link, MsgBuffer* buf, Bytes frame, uint64_t now_ms);

inline bool buffer_offline(Bytes frame, MsgBuffer& buf) { return buf.push(std::move(frame)); }

// Drains the buffer onto the link in FIFO order. Stops (keeping order) if the
// link goes down again mid-flush. Returns frames delivered to the link.
size_t flush_on_reconnect(MsgBuffer& buf, Link& link, uint64_t now_ms);

struct ArqConfig {
    uint32_t window_size = 16;
    uint64_t timeout_ms = 200;
    uint32_t max_retries = 8;
};

// Sliding-window sender over a fixed list of data frames (seq = index).
// Driven externally: on_tick emits due frames, on_ack slides the window.
class Sender {
public:
    using Emit = std::function<void(const Frame&)>;

    Sender(std::vector<Frame> frames, ArqConfig cfg = {});

    enum class Status { InFlight, Done, Failed };

    void on_tick(uint64_t now_ms, const Emit& emit);
    void on_ack(uint32_t seq);
    void abort();  // stop sending; used when a delivery is superseded

    Status status() const { return status_; }
    uint32_t failed_seq() const { return failed_seq_; }
    uint32_t data_sends() const { return data_sends_; }
    uint32_t retransmissions() const { return retransmissions_; }
    uint32_t frame_count() const { return static_cast<uint32_t>(frames_.size()); }
    size_t in_flight() const { return in_flight_.size(); }

private:
    struct Flight {
        uint64_t last_send;
        uint32_t retries;
    };
    std::vector<Frame> frames_;
    std::vector<bool> acked_;
    std::map<uint32_t, Flight> in_flight_;
    ArqConfig cfg_;
    uint32_t next_new_ = 0;
    uint32_t acked_count_ = 0;
    Status status_ = Status::InFlight;
    uint32_t failed_seq_ = 0;
    uint32_t data_sends_ = 0;
    uint32_t retransmissions_ = 0;
};

// Builds the wire frames for a plan: one Content frame when the payload fits
// in chunk_size, otherwise one Chunk frame per fragment.
std::vector<Frame> plan_frames(const server::DeliveryPlan& plan, uint8_t epoch);

// Fires each plan frame once (no retransmission); buffers on a down link when
// a buffer is supplied.
void dispatch(const server::DeliveryPlan& plan, Link& link, uint64_t now_ms,
              MsgBuffer* offline = nullptr);

struct ReliableResult {
    bool ok = false;
    uint32_t failed_seq = 0;
    uint32_t data_sends = 0;
    uint32_t retransmissions = 0;
    uint64_t end_ms = 0;
};

// Acked seqs that became available at now_ms (harness drains the reverse link).
using AckSource = std::function<std::vector<uint32_t>(uint64_t now_ms)>;

// Synchronous ARQ driver over a virtual clock: retransmits unacked chunks
// after timeout_ms until all acked or retries exhaust.
ReliableResult send_reliable(const std::vector<Chunk>& chunks, MediaType media, uint8_t epoch,
                             Link& link, const AckSource& acks, ArqConfig cfg = {},
                             uint64_t start_ms = 0, uint64_t tick_ms = 10,
                             MsgBuffer* offline = nullptr);

}  // namespace mcl::transport
