#include "mcl/netsim.hpp"

#include <algorithm>

#include "mcl/errors.hpp"

namespace mcl::sim {

SimLink::SimLink(LinkConfig cfg) : cfg_(std::move(cfg)), rng_state_(cfg_.seed) {}

uint64_t SimLink::next_rand() {
    // splitmix64
    uint64_t z = (rng_state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

bool SimLink::draw(uint8_t pct) { return next_rand() % 100 < pct; }

LinkState SimLink::state(uint64_t now_ms) {
    for (const auto& [down, up] : cfg_.outages)
        if (now_ms >= down && now_ms < up) return LinkState::Down;
    return LinkState::Up;
}

bool SimLink::send(Bytes frame, uint64_t now_ms) {
    if (state(now_ms) == LinkState::Down) {
        ++refused_;
        return false;
    }
    ++sent_;
    if (draw(cfg_.loss_pct)) {
        ++dropped_;
        // Lost in transit, not refused: draws for dup/reorder are still
        // consumed so the transcript depends only on the send sequence.
        draw(cfg_.dup_pct);
        draw(cfg_.reorder_pct);
        return true;
    }
    bool dup = draw(cfg_.dup_pct);
    bool reorder = draw(cfg_.reorder_pct);
    Pending p{now_ms + cfg_.latency_ms, order_counter_++, frame};
    if (reorder && !pending_.empty()) {
        Pending& last = pending_.back();
        std::swap(p.deliver_at, last.deliver_at);
        std::swap(p.order, last.order);
    }
    pending_.push_back(std::move(p));
    if (dup) {
        ++duplicated_;
        pending_.push_back(Pending{now_ms + cfg_.latency_ms, order_counter_++, std::move(frame)});
    }
    return true;
}

std::vector<Bytes> SimLink::advance(uint64_t now_ms) {
    if (advanced_once_ && now_ms < last_advance_)
        throw ClockRegression("advance called with now_ms in the past");
    advanced_once_ = true;
    last_advance_ = now_ms;

    std::vector<Pending> due;
    auto it = std::partition(pending_.begin(), pending_.end(),
                             [&](const Pending& p) { return p.deliver_at > now_ms; });
    due.assign(std::make_move_iterator(it), std::make_move_iterator(pending_.end()));
    pending_.erase(it, pending_.end());
    std::sort(due.begin(), due.end(), [](const Pending& a, const Pending& b) {
        return a.deliver_at != b.deliver_at ? a.deliver_at < b.deliver_at : a.order < b.order;
    });
    std::vector<Bytes> out;
    out.reserve(due.size());
    for (Pending& p : due) out.push_back(std::move(p.frame));
    delivered_ += out.size();
    return out;
}

}  // namespace mcl::sim
