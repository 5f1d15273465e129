// One-directional link abstraction: the sender calls send(), the receiver
// drains deliveries with advance(). Implemented by the simulator and by the
// socket adapters in the CLI tools.
#pragma once

#include <cstdint>
#include <vector>

#include "mcl/types.hpp"

namespace mcl {

enum class LinkState : uint8_t { Up, Down };

class Link {
public:
    virtual ~Link() = default;

    // Returns false when the link is down (frame refused, caller may buffer).
    virtual bool send(Bytes frame, uint64_t now_ms) = 0;

    // Frames that have arrived at the receiving end by now_ms, in delivery order.
    virtual std::vector<Bytes> advance(uint64_t now_ms) = 0;

    virtual LinkState state(uint64_t now_ms) = 0;
};

}  // namespace mcl
