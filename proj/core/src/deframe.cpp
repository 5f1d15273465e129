#include "mcl/deframe.hpp"

namespace mcl {

std::vector<Frame> Deframer::feed(const uint8_t* data, size_t n) {
    buf_.insert(buf_.end(), data, data + n);
    std::vector<Frame> out;
    size_t off = 0;
    while (true) {
        auto total = frame_total_len(buf_.data() + off, buf_.size() - off);
        if (!total || buf_.size() - off < *total) break;
        out.push_back(decode_frame(buf_.data() + off, *total));
        off += *total;
    }
    buf_.erase(buf_.begin(), buf_.begin() + off);
    return out;
}

}  // namespace mcl
