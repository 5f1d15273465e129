#include "mcl/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mcl/client.hpp"
#include "mcl/errors.hpp"
#include "mcl/simdriver.hpp"

namespace mcl::sim {

using nlohmann::json;

namespace {

Bytes read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw ScenarioError("cannot open file: " + p.string());
    return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

LinkConfig link_config(const json& j, uint64_t seed) {
    LinkConfig cfg;
    cfg.seed = seed;
    cfg.loss_pct = j.value("loss_pct", 0);
    cfg.dup_pct = j.value("dup_pct", 0);
    cfg.reorder_pct = j.value("reorder_pct", 0);
    cfg.latency_ms = j.value("latency_ms", 0);
    if (cfg.loss_pct > 100 || cfg.dup_pct > 100 || cfg.reorder_pct > 100)
        throw ScenarioError("link percentages must be in 0..100");
    uint64_t prev_up = 0;
    for (const auto& o : j.value("outages", json::array())) {
        uint64_t down = o.at(0), up = o.at(1);
        if (up <= down || down < prev_up)
            throw ScenarioError("outage intervals must be ordered and non-overlapping");
        cfg.outages.emplace_back(down, up);
        prev_up = up;
    }
    return cfg;
}

DeviceProfile profile_from(const json& j) {
    if (j.is_string()) return client::parse_profile_text(j.get<std::string>());
    std::string lines;
    for (const auto& [k, v] : j.items()) {
        lines += k;
        lines += '=';
        lines += v.is_string() ? v.get<std::string>() : v.dump();
        lines += '\n';
    }
    return client::parse_profile_text(lines);
}

struct Row {
    std::string url;
    std::string outcome;
    uint64_t bytes = 0;
    uint32_t chunks = 0;
    uint32_t retransmissions = 0;
    uint64_t buffered = 0;
};

}  // namespace

ScenarioReport run_scenario(const std::string& json_text, const std::filesystem::path& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario syntax: ") + e.what());
    }

    try {
        uint64_t seed = j.value("seed", 1);
        Warehouse store(seed + 2);
        for (const auto& item : j.value("items", json::array())) {
            auto media = media_from_string(item.at("media"));
            if (!media) throw ScenarioError("unknown media in item");
            Bytes payload;
            if (item.contains("text")) {
                std::string t = item.at("text");
                payload = to_bytes(t);
            } else if (item.contains("file")) {
                payload = read_file(base_dir / item.at("file").get<std::string>());
            }
            store.ingest(item.at("url"), *media, std::move(payload));
        }

        DeviceProfile profile;
        if (j.contains("profile")) {
            profile = profile_from(j.at("profile"));
        } else {
            profile.device_id = "sim";
            profile.supported_media = {MediaType::Data, MediaType::Graph, MediaType::Image,
                                       MediaType::Voice};
            profile.max_content_bytes = 16 * 1024 * 1024;
        }

        json link_json = j.value("link", json::object());
        SimLink to_server(link_config(link_json, seed));
        SimLink to_client(link_config(link_json, seed + 1));
        server::Endpoint endpoint(store);
        client::PumpConfig pump_cfg;
        pump_cfg.buffer_capacity = j.value("buffer_capacity", size_t{256});
        client::SimDriver driver(endpoint, to_server, to_client, pump_cfg);

        std::vector<Row> rows;
        uint32_t prev_retx = 0;
        uint64_t prev_buffered = 0;
        for (const auto& action : j.value("actions", json::array())) {
            if (!action.contains("fetch")) throw ScenarioError("action without fetch url");
            ContentRequest req;
            req.url = action.at("fetch");
            req.profile = profile;
            req.net.quality = quality_from_string(action.value("quality", "high"))
                                  .value_or(LinkQuality::High);
            std::optional<ModificationSpec> mid_spec;
            uint32_t mod_after = action.value("mod_after_chunks", 0);
            if (action.contains("modify")) {
                auto spec = client::parse_mod_spec(action.at("modify"));
                if (mod_after > 0)
                    mid_spec = spec;  // injected mid-stream instead of in the request
                else
                    req.mod_spec = spec;
            }

            client::Session session(req);
            bool mod_sent = false;
            client::TickHook hook;
            if (mid_spec)
                hook = [&](client::Session& s, uint64_t) {
                    if (!mod_sent && s.chunks_received() >= mod_after)
                        mod_sent = s.request_modification(*mid_spec);
                };
            auto result = driver.run_fetch(session, hook);

            Row row;
            row.url = req.url;
            row.outcome = client::to_string(result.outcome);
            row.bytes = result.item.payload.size();
            row.chunks = result.chunks_received;
            row.retransmissions = driver.stats().server_retransmissions - prev_retx;
            row.buffered = driver.stats().buffered_frames - prev_buffered;
            prev_retx = driver.stats().server_retransmissions;
            prev_buffered = driver.stats().buffered_frames;
            rows.push_back(std::move(row));
        }

        ScenarioReport report;
        std::ostringstream csv;
        csv << "url,outcome,bytes,chunks,retransmissions,buffered_frames\n";
        for (const Row& r : rows)
            csv << r.url << ',' << r.outcome << ',' << r.bytes << ',' << r.chunks << ','
                << r.retransmissions << ',' << r.buffered << '\n';
        report.csv = csv.str();

        auto total_retx = [&] {
            uint64_t n = 0;
            for (const Row& r : rows) n += r.retransmissions;
            return n;
        }();
        auto total_buffered = [&] {
            uint64_t n = 0;
            for (const Row& r : rows) n += r.buffered;
            return n;
        }();

        for (const auto& a : j.value("assertions", json::array())) {
            std::string name = a.value("name", a.value("check", "unnamed"));
            std::string check = a.at("check");
            auto fail = [&](const std::string& detail) {
                report.assertions_ok = false;
                report.failures.push_back(name + ": " + detail);
            };
            auto check_value = [&](uint64_t value) {
                if (a.contains("equals") && value != a.at("equals").get<uint64_t>())
                    fail("got " + std::to_string(value) + ", want " + a.at("equals").dump());
                if (a.contains("min") && value < a.at("min").get<uint64_t>())
                    fail("got " + std::to_string(value) + ", min " + a.at("min").dump());
                if (a.contains("max") && value > a.at("max").get<uint64_t>())
                    fail("got " + std::to_string(value) + ", max " + a.at("max").dump());
            };
            if (check == "all_success") {
                for (const Row& r : rows)
                    if (r.outcome != "success") fail(r.url + " -> " + r.outcome);
            } else if (check == "outcome") {
                size_t idx = a.value("request", 0);
                if (idx >= rows.size()) fail("request index out of range");
                else if (rows[idx].outcome != a.at("equals").get<std::string>())
                    fail(rows[idx].url + " -> " + rows[idx].outcome);
            } else if (check == "retransmissions_total") {
                check_value(total_retx);
            } else if (check == "buffered_total") {
                check_value(total_buffered);
            } else if (check == "bytes") {
                size_t idx = a.value("request", 0);
                if (idx >= rows.size()) fail("request index out of range");
                else check_value(rows[idx].bytes);
            } else {
                throw ScenarioError("unknown assertion check: " + check);
            }
        }
        return report;
    } catch (const json::exception& e) {
        throw ScenarioError(std::string("scenario syntax: ") + e.what());
    }
}

ScenarioReport run_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return run_scenario(ss.str(), path.parent_path().empty() ? "." : path.parent_path());
}

}  // namespace mcl::sim
