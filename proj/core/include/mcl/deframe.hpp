// Incremental frame extraction from a byte stream (socket transport).
#pragma once

#include <vector>

#include "mcl/frame.hpp"

namespace mcl {

class Deframer {
public:
    // Appends raw stream bytes and returns every frame completed by them.
    // Throws CodecError on a corrupt stream.
    std::vector<Frame> feed(const uint8_t* data, size_t n);
    std::vector<Frame> feed(const Bytes& b) { return feed(b.data(), b.size()); }

    size_t buffered() const { return buf_.size(); }

private:
    Bytes buf_;
};

}  // namespace mcl
