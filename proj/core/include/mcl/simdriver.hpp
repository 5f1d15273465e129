// Virtual-clock pump binding a client Session and a server Endpoint over a
// pair of simulated links, with offline buffering and flush on reconnect at
// both ends. Drives every end-to-end test and the scenario runner.
#pragma once

#include <functional>

#include "mcl/endpoint.hpp"
#include "mcl/netsim.hpp"
#include "mcl/session.hpp"
#include "mcl/transport.hpp"

namespace mcl::client {

struct PumpConfig {
    uint64_t tick_ms = 10;
    uint64_t deadline_ms = 5 * 60 * 1000;  // virtual time budget per fetch
    size_t buffer_capacity = 256;
};

struct PumpStats {
    uint32_t server_retransmissions = 0;
    uint64_t buffered_frames = 0;  // frames that went through either offline buffer
    uint64_t ticks = 0;
};

// Called once per tick after frame exchange; lets tests inject mid-stream
// actions (e.g. a ModRequest after N chunks).
using TickHook = std::function<void(Session&, uint64_t now_ms)>;

class SimDriver {
public:
    SimDriver(server::Endpoint& server, sim::SimLink& to_server, sim::SimLink& to_client,
              PumpConfig cfg = {});

    // Runs one fetch to completion (or deadline). The clock continues across
    // calls so multiple fetches share one timeline.
    FetchResult run_fetch(Session& session, const TickHook& hook = nullptr);

    uint64_t now() const { return now_; }
    const PumpStats& stats() const { return stats_; }

private:
    void pump_once(Session& session);
    void deliver_to_server(uint64_t now);
    void deliver_to_client(Session& session, uint64_t now);
    void client_emit(Session& session, uint64_t now);
    void server_emit(uint64_t now);

    server::Endpoint& server_;
    sim::SimLink& to_server_;
    sim::SimLink& to_client_;
    PumpConfig cfg_;
    transport::MsgBuffer client_buf_;
    transport::MsgBuffer server_buf_;
    LinkState prev_up_ = LinkState::Up;
    LinkState prev_down_ = LinkState::Up;
    uint64_t now_ = 0;
    PumpStats stats_;
};

}  // namespace mcl::client
