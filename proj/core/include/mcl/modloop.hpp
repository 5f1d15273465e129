// Modification layer: chunk reassembly (CIM), routing (CFM), transform
// application (CMF), the accept/reject decision (CDM), and the bounded retry
// loop tying them together.
#pragma once

#include <map>
#include <optional>
#include <variant>

#include "mcl/frame.hpp"
#include "mcl/link.hpp"
#include "mcl/transport.hpp"
#include "mcl/types.hpp"

namespace mcl::modloop {

// Per-content reassembly state. Duplicates are idempotent; conflicting
// payloads for one seq are an error.
class Reassembly {
public:
    Reassembly(const ContentId& id, uint32_t total);

    enum class Step { Pending, Complete };

    Step integrate(const Chunk& c);

    bool complete() const { return received_.size() == total_; }
    Bytes payload() const;  // seq-order concatenation; valid once complete
    size_t received_count() const { return received_.size(); }
    const ContentId& content_id() const { return id_; }
    uint32_t total() const { return total_; }

private:
    ContentId id_;
    uint32_t total_;
    std::map<uint32_t, Bytes> received_;
};

enum class Route : uint8_t { MediaManager, Modifier };

inline Route route(const std::optional<ModificationSpec>& spec) {
    return spec ? Route::Modifier : Route::MediaManager;
}

// Applies transforms left to right. Media type and content id are preserved;
// the result carries the modified flag.
ContentItem modify(const ContentItem& content, const ModificationSpec& spec);

struct Decision {
    enum class Reason : uint8_t { WrongContent, UnsupportedMedia, TooLarge, SpecUnsatisfied };
    bool accept = false;
    Reason reason = Reason::WrongContent;  // meaningful only when !accept

    static Decision accepted() { return Decision{true, Reason::WrongContent}; }
    static Decision rejected(Reason r) { return Decision{false, r}; }
};

Decision decide(const ContentItem& content, const ContentRequest& req);

struct ModLoopResult {
    bool ok = false;
    ContentItem item;      // valid when ok
    ErrorInfo error;       // valid when !ok
    uint32_t decide_calls = 0;
    std::optional<ModificationSpec> applied_spec;  // spec actually applied, incl. auto-truncates
};

// route -> modify -> decide, with the auto-truncate repair on TooLarge: the
// first retry appends Truncate(max_content_bytes), each further retry halves
// the bound. At most max_mod_retries retries (so max_mod_retries + 1 decides).
ModLoopResult run_mod_loop(const ContentItem& content, const ContentRequest& req,
                           uint32_t max_mod_retries = 3);

// CDM-accepted content heading back across the link: fragment and send,
// buffering while the link is down.
void refragment_and_send(const ContentItem& content, uint32_t chunk_size, uint8_t epoch,
                         Link& link, uint64_t now_ms, transport::MsgBuffer* offline = nullptr);

}  // namespace mcl::modloop
