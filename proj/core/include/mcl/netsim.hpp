// Deterministic simulated link: seeded loss, duplication, reordering, fixed
// latency, and scheduled outages over a virtual clock.
//
// RNG discipline (fixed so golden transcripts are portable): the generator is
// splitmix64 seeded with LinkConfig::seed. Per send() while the link is up the
// draws happen in this order: loss (next() % 100 < loss_pct), then dup, then
// reorder. A reorder draw swaps the new frame's delivery slot with the most
// recently queued pending frame, if any.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mcl/link.hpp"

namespace mcl::sim {

struct LinkConfig {
    uint64_t seed = 1;
    uint8_t loss_pct = 0;
    uint8_t dup_pct = 0;
    uint8_t reorder_pct = 0;
    uint64_t latency_ms = 0;
    // Half-open [down_at, up_at) intervals, non-overlapping and ordered.
    std::vector<std::pair<uint64_t, uint64_t>> outages;
};

class SimLink : public Link {
public:
    explicit SimLink(LinkConfig cfg);

    bool send(Bytes frame, uint64_t now_ms) override;
    std::vector<Bytes> advance(uint64_t now_ms) override;
    LinkState state(uint64_t now_ms) override;

    uint64_t sent() const { return sent_; }
    uint64_t dropped() const { return dropped_; }
    uint64_t duplicated() const { return duplicated_; }
    uint64_t delivered() const { return delivered_; }
    uint64_t refused() const { return refused_; }

private:
    uint64_t next_rand();
    bool draw(uint8_t pct);

    struct Pending {
        uint64_t deliver_at;
        uint64_t order;
        Bytes frame;
    };

    LinkConfig cfg_;
    uint64_t rng_state_;
    std::vector<Pending> pending_;
    uint64_t order_counter_ = 0;
    uint64_t last_advance_ = 0;
    bool advanced_once_ = false;
    uint64_t sent_ = 0, dropped_ = 0, duplicated_ = 0, delivered_ = 0, refused_ = 0;
};

}  // namespace mcl::sim
