// Frame-level server endpoint: binds the base layer, the modification loop,
// and the ARQ sender behind a single on_frame/on_tick surface. The driver
// (simulator pump or socket loop) owns the links and drains take_outgoing().
#pragma once

#include <deque>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mcl/modloop.hpp"
#include "mcl/server.hpp"
#include "mcl/transport.hpp"
#include "mcl/warehouse.hpp"

namespace mcl::server {

struct EndpointConfig {
    transport::ArqConfig arq;
    uint32_t max_mod_retries = 3;
};

struct RequestLog {
    std::string url;
    std::string outcome;  // "ok", "not_found", "unsupported_media", "mod_failed", "delivery_failed"
    uint32_t chunks = 0;
    uint32_t retransmissions = 0;
};

class Endpoint {
public:
    Endpoint(Warehouse& store, EndpointConfig cfg = {});

    void on_frame(const Frame& f, uint64_t now_ms);
    void on_tick(uint64_t now_ms);

    std::vector<Frame> take_outgoing();

    const std::vector<RequestLog>& log() const { return log_; }
    uint32_t total_retransmissions() const;
    bool idle() const;  // no delivery still in flight

private:
    struct Delivery {
        ContentRequest req;
        ContentItem original;  // warehouse bytes, pre-modification
        uint32_t chunk_size = 4096;
        uint8_t epoch = 0;
        std::unique_ptr<transport::Sender> sender;
        size_t log_index = 0;
    };

    void handle_request_frame(const Frame& f, uint64_t now_ms);
    void handle_ack(const Frame& f, uint64_t now_ms);
    void handle_mod_request(const Frame& f, uint64_t now_ms);
    void start_delivery(Delivery& d, uint64_t now_ms);
    void emit(Frame f) { outgoing_.push_back(std::move(f)); }

    Warehouse& store_;
    EndpointConfig cfg_;
    std::map<ContentId, Delivery> deliveries_;
    std::vector<Frame> outgoing_;
    std::vector<RequestLog> log_;
    uint32_t finished_retransmissions_ = 0;
};

}  // namespace mcl::server
