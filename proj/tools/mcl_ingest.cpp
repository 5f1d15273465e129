// mcl-ingest: loads a JSON manifest of content items into a warehouse and
// writes it out as a snapshot file for mcl-server.
//
// Manifest: [{"url": "...", "media": "data|graph|image|voice",
//             "file": "payload path"} | {"url", "media", "text": "inline"}]
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mcl/errors.hpp"
#include "mcl/warehouse.hpp"

using nlohmann::json;

int main(int argc, char** argv) {
    CLI::App app{"MCL warehouse ingestion"};
    std::string manifest_path;
    std::string out_path;
    uint64_t seed = 1;
    app.add_option("manifest", manifest_path, "manifest JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("-o,--out", out_path, "snapshot output path")->required();
    app.add_option("--seed", seed, "content id seed");
    CLI11_PARSE(app, argc, argv);

    try {
        std::ifstream in(manifest_path);
        json manifest = json::parse(in);
        if (!manifest.is_array()) throw mcl::IoError("manifest must be a JSON array");
        std::filesystem::path base = std::filesystem::path(manifest_path).parent_path();

        mcl::Warehouse store(seed);
        for (const auto& item : manifest) {
            std::string url = item.at("url");
            auto media = mcl::media_from_string(item.at("media"));
            if (!media) throw mcl::IoError("unknown media for " + url);
            mcl::Bytes payload;
            if (item.contains("text")) {
                std::string t = item.at("text");
                payload = mcl::to_bytes(t);
            } else {
                std::filesystem::path p = base / item.at("file").get<std::string>();
                std::ifstream f(p, std::ios::binary);
                if (!f) throw mcl::IoError("cannot open payload: " + p.string());
                payload.assign(std::istreambuf_iterator<char>(f),
                               std::istreambuf_iterator<char>());
            }
            store.ingest(url, *media, std::move(payload));
        }
        store.snapshot_save(out_path);
        std::cout << "ingested " << store.size() << " items -> " << out_path << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "mcl-ingest: " << e.what() << "\n";
        return 1;
    }
}
