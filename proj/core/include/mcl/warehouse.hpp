// Enterprise data warehouse: keyed content store with file-backed snapshots.
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <vector>

#include "mcl/types.hpp"

namespace mcl {

// Last-write-wins keyed store. Many concurrent readers, one writer.
// content ids are 16 random bytes minted per ingest; pass a seed for
// reproducible ids (the simulator does).
class Warehouse {
public:
    Warehouse();
    explicit Warehouse(uint64_t id_seed);
    Warehouse(Warehouse&&) noexcept;
    Warehouse& operator=(Warehouse&&) noexcept;

    ContentId ingest(const std::string& url, MediaType media, Bytes payload);
    std::optional<ContentItem> lookup(const std::string& url) const;
    std::optional<ContentItem> lookup_id(const ContentId& id) const;
    std::vector<std::string> list(const std::string& prefix) const;
    size_t size() const;

    // Snapshot file: magic "MCLW", u32 item count, per item
    // (u16 url_len, url, media u8, content_id 16, u32 payload_len, payload),
    // trailing CRC32 over everything before it.
    void snapshot_save(const std::filesystem::path& path) const;
    static Warehouse snapshot_load(const std::filesystem::path& path);

private:
    ContentId mint_id();

    std::map<std::string, ContentItem> items_;
    std::map<ContentId, std::string> index_;
    std::mt19937_64 rng_;
    uint64_t clock_ = 0;
    mutable std::shared_mutex mtx_;
};

}  // namespace mcl
