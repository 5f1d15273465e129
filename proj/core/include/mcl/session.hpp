// Client-side session: issues the request, acks and reassembles chunks with
// epoch supersession, and surfaces the delivered item or error.
#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mcl/frame.hpp"
#include "mcl/modloop.hpp"
#include "mcl/types.hpp"

namespace mcl::client {

enum class FetchOutcome : uint8_t {
    Pending,
    Success,
    NotFound,
    UnsupportedMedia,
    ModFailed,
    UnknownContent,
    DeliveryFailed,  // timeout / link gave out
};

const char* to_string(FetchOutcome o);

struct FetchResult {
    FetchOutcome outcome = FetchOutcome::Pending;
    ContentItem item;  // valid on Success
    std::string error_message;
    uint32_t chunks_received = 0;
    uint64_t bytes_received = 0;
};

class Session {
public:
    // The request frame is queued on construction; the first take_outgoing()
    // call yields it.
    explicit Session(ContentRequest req);

    Frame request_frame() const;

    void on_frame(const Frame& f, uint64_t now_ms);
    // Retransmits the request until any response arrives, and an unacked
    // ModRequest until its ack arrives.
    void on_tick(uint64_t now_ms);
    std::vector<Frame> take_outgoing();

    // Queues a ModRequest for the in-flight (or completed) delivery. Requires
    // the content id to be known, i.e. at least one data frame seen.
    bool request_modification(const ModificationSpec& spec);

    bool done() const { return result_.outcome != FetchOutcome::Pending; }
    const FetchResult& result() const { return result_; }
    uint32_t chunks_received() const { return result_.chunks_received; }
    bool mod_acknowledged() const { return mod_acked_; }
    std::optional<ContentId> content_id() const { return content_id_; }

private:
    void emit(Frame f) { outgoing_.push_back(std::move(f)); }
    void complete(const ContentId& id, MediaType media, Bytes payload);

    ContentRequest req_;
    std::vector<Frame> outgoing_;
    FetchResult result_;
    std::optional<ContentId> content_id_;
    uint8_t epoch_ = 0;
    std::unique_ptr<modloop::Reassembly> reassembly_;
    bool mod_pending_ = false;  // a ModRequest was sent; stale epochs must not complete
    bool mod_acked_ = false;
    bool response_seen_ = false;
    std::optional<Frame> pending_mod_;
    uint64_t last_retry_ms_ = 0;
    uint64_t retry_interval_ms_ = 200;
};

}  // namespace mcl::client
