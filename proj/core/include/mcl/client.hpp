// Application layer: media manager dispatch of delivered content to per-media
// rendering paths, and CLI-facing helpers (profile files, mod-spec syntax).
#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mcl/grammar.hpp"
#include "mcl/parser.hpp"
#include "mcl/session.hpp"
#include "mcl/types.hpp"

namespace mcl::client {

struct PointSeries {
    std::vector<std::pair<double, double>> points;

    std::string to_csv() const;  // "x,y" per line
};

struct DisplayedContent {
    MediaType media = MediaType::Data;
    // Data
    parse::DomNode dom;
    std::string canonical;
    // Graph
    PointSeries points;
    // Image / Voice
    std::filesystem::path out_file;
};

// Routes a complete item to its media sink:
//   Data  -> full parse-engine lifecycle, canonical text
//   Graph -> "x<TAB>y" decimal lines decoded to a point series
//   Image/Voice -> payload written to out_dir/<content_id>.{img,voc}
DisplayedContent media_dispatch(const ContentItem& item, const parse::DtdGrammar& grammar,
                                const std::filesystem::path& out_dir);

// key=value profile file: device_id, screen (WxH), media (comma list),
// max_content_bytes, os, connection (high|medium|low).
DeviceProfile parse_profile_text(const std::string& text);
DeviceProfile load_profile_file(const std::filesystem::path& path);

// CLI mod-spec mini-syntax: "truncate:100,strip_markup:0".
ModificationSpec parse_mod_spec(const std::string& text);

}  // namespace mcl::client
