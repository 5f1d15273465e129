#include "mcl/warehouse.hpp"

#include <fstream>
#include <mutex>

#include "mcl/byteio.hpp"
#include "mcl/checksum.hpp"
#include "mcl/errors.hpp"

namespace mcl {

Warehouse::Warehouse() : rng_(std::random_device{}()) {}
Warehouse::Warehouse(uint64_t id_seed) : rng_(id_seed) {}

Warehouse::Warehouse(Warehouse&& o) noexcept
    : items_(std::move(o.items_)), index_(std::move(o.index_)), rng_(o.rng_), clock_(o.clock_) {}

Warehouse& Warehouse::operator=(Warehouse&& o) noexcept {
    items_ = std::move(o.items_);
    index_ = std::move(o.index_);
    rng_ = o.rng_;
    clock_ = o.clock_;
    return *this;
}

ContentId Warehouse::mint_id() {
    ContentId id;
    for (size_t i = 0; i < 16; i += 8) {
        uint64_t v = rng_();
        for (size_t j = 0; j < 8; ++j) id[i + j] = static_cast<uint8_t>(v >> (8 * j));
    }
    return id;
}

ContentId Warehouse::ingest(const std::string& url, MediaType media, Bytes payload) {
    std::unique_lock lock(mtx_);
    auto it = items_.find(url);
    if (it != items_.end()) index_.erase(it->second.content_id);
    ContentItem item;
    item.content_id = mint_id();
    item.url = url;
    item.media = media;
    item.payload = std::move(payload);
    item.created_at = ++clock_;
    index_[item.content_id] = url;
    items_[url] = std::move(item);
    return items_[url].content_id;
}

std::optional<ContentItem> Warehouse::lookup(const std::string& url) const {
    std::shared_lock lock(mtx_);
    auto it = items_.find(url);
    if (it == items_.end()) return std::nullopt;
    return it->second;
}

std::optional<ContentItem> Warehouse::lookup_id(const ContentId& id) const {
    std::shared_lock lock(mtx_);
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return items_.at(it->second);
}

std::vector<std::string> Warehouse::list(const std::string& prefix) const {
    std::shared_lock lock(mtx_);
    std::vector<std::string> out;
    for (auto it = items_.lower_bound(prefix); it != items_.end(); ++it) {
        if (it->first.compare(0, prefix.size(), prefix) != 0) break;
        out.push_back(it->first);
    }
    return out;
}

size_t Warehouse::size() const {
    std::shared_lock lock(mtx_);
    return items_.size();
}

void Warehouse::snapshot_save(const std::filesystem::path& path) const {
    Bytes body;
    {
        std::shared_lock lock(mtx_);
        body.reserve(8);
        const char magic[4] = {'M', 'C', 'L', 'W'};
        put_bytes(body, reinterpret_cast<const uint8_t*>(magic), 4);
        put_u32(body, static_cast<uint32_t>(items_.size()));
        for (const auto& [url, item] : items_) {
            put_u16(body, static_cast<uint16_t>(url.size()));
            put_bytes(body, reinterpret_cast<const uint8_t*>(url.data()), url.size());
            put_u8(body, static_cast<uint8_t>(item.media));
            put_bytes(body, item.content_id.data(), 16);
            put_u32(body, static_cast<uint32_t>(item.payload.size()));
            put_bytes(body, item.payload.data(), item.payload.size());
        }
    }
    put_u32(body, crc32(body.data(), body.size()));
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw SnapshotError(SnapshotError::Kind::Io, "cannot open " + path.string());
    out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
    if (!out) throw SnapshotError(SnapshotError::Kind::Io, "write failed: " + path.string());
}

Warehouse Warehouse::snapshot_load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SnapshotError(SnapshotError::Kind::Io, "cannot open " + path.string());
    Bytes body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (body.size() < 12)
        throw SnapshotError(SnapshotError::Kind::Corrupt, "snapshot too short");
    uint32_t stored = (uint32_t(body[body.size() - 4]) << 24) |
                      (uint32_t(body[body.size() - 3]) << 16) |
                      (uint32_t(body[body.size() - 2]) << 8) | body[body.size() - 1];
    if (crc32(body.data(), body.size() - 4) != stored)
        throw SnapshotError(SnapshotError::Kind::Corrupt, "snapshot crc mismatch");

    Warehouse w;
    try {
        ByteReader r(body.data(), body.size() - 4);
        if (r.str(4) != "MCLW")
            throw SnapshotError(SnapshotError::Kind::Corrupt, "bad snapshot magic");
        uint32_t count = r.u32();
        for (uint32_t i = 0; i < count; ++i) {
            std::string url = r.str(r.u16());
            ContentItem item;
            item.media = static_cast<MediaType>(r.u8());
            item.content_id = r.id();
            item.payload = r.bytes(r.u32());
            item.url = url;
            item.created_at = ++w.clock_;
            w.index_[item.content_id] = url;
            w.items_[url] = std::move(item);
        }
    } catch (const CodecError&) {
        throw SnapshotError(SnapshotError::Kind::Corrupt, "snapshot body truncated");
    }
    return w;
}

}  // namespace mcl
