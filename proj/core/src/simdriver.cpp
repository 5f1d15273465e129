#include "mcl/simdriver.hpp"

namespace mcl::client {

SimDriver::SimDriver(server::Endpoint& server, sim::SimLink& to_server, sim::SimLink& to_client,
                     PumpConfig cfg)
    : server_(server),
      to_server_(to_server),
      to_client_(to_client),
      cfg_(cfg),
      client_buf_(cfg.buffer_capacity),
      server_buf_(cfg.buffer_capacity) {}

void SimDriver::client_emit(Session& session, uint64_t now) {
    for (Frame& f : session.take_outgoing())
        transport::send_or_buffer(to_server_, &client_buf_, encode_frame(f), now);
}

void SimDriver::server_emit(uint64_t now) {
    for (Frame& f : server_.take_outgoing())
        transport::send_or_buffer(to_client_, &server_buf_, encode_frame(f), now);
}

void SimDriver::deliver_to_server(uint64_t now) {
    for (Bytes& raw : to_server_.advance(now)) server_.on_frame(decode_frame(raw), now);
}

void SimDriver::deliver_to_client(Session& session, uint64_t now) {
    for (Bytes& raw : to_client_.advance(now)) session.on_frame(decode_frame(raw), now);
}

void SimDriver::pump_once(Session& session) {
    now_ += cfg_.tick_ms;
    ++stats_.ticks;

    // Flush offline buffers on Down -> Up transitions before any new traffic.
    LinkState up_state = to_server_.state(now_);
    if (prev_up_ == LinkState::Down && up_state == LinkState::Up)
        transport::flush_on_reconnect(client_buf_, to_server_, now_);
    prev_up_ = up_state;
    LinkState down_state = to_client_.state(now_);
    if (prev_down_ == LinkState::Down && down_state == LinkState::Up)
        transport::flush_on_reconnect(server_buf_, to_client_, now_);
    prev_down_ = down_state;

    deliver_to_server(now_);
    server_emit(now_);
    deliver_to_client(session, now_);
    session.on_tick(now_);
    client_emit(session, now_);
    server_.on_tick(now_);
    server_emit(now_);
}

FetchResult SimDriver::run_fetch(Session& session, const TickHook& hook) {
    client_emit(session, now_);
    uint64_t deadline = now_ + cfg_.deadline_ms;
    while (!session.done() && now_ < deadline) {
        pump_once(session);
        if (hook) {
            hook(session, now_);
            client_emit(session, now_);
        }
    }
    // Let trailing acks drain until the server's sender finishes; otherwise a
    // late retransmission could leak into the next fetch on this driver.
    for (int i = 0; i < 8 || (!server_.idle() && i < 2000); ++i) pump_once(session);

    stats_.server_retransmissions = server_.total_retransmissions();
    stats_.buffered_frames = client_buf_.total_buffered() + server_buf_.total_buffered();
    FetchResult r = session.result();
    if (r.outcome == FetchOutcome::Pending) r.outcome = FetchOutcome::DeliveryFailed;
    return r;
}

}  // namespace mcl::client
