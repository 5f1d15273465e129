#include <fstream>
#include <sstream>

#include "mcl/client.hpp"
#include "mcl/errors.hpp"

namespace mcl::client {
namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

DeviceProfile parse_profile_text(const std::string& text) {
    DeviceProfile p;
    p.supported_media.clear();
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw IoError("bad profile line: " + line);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "device_id") {
            p.device_id = val;
        } else if (key == "screen") {
            size_t x = val.find('x');
            if (x == std::string::npos) throw IoError("screen wants WxH: " + val);
            p.screen_w = static_cast<uint32_t>(std::stoul(val.substr(0, x)));
            p.screen_h = static_cast<uint32_t>(std::stoul(val.substr(x + 1)));
        } else if (key == "media") {
            std::istringstream ms(val);
            std::string m;
            while (std::getline(ms, m, ',')) {
                auto media = media_from_string(trim(m));
                if (!media) throw IoError("unknown media type: " + m);
                p.supported_media.insert(*media);
            }
        } else if (key == "max_content_bytes") {
            p.max_content_bytes = static_cast<uint32_t>(std::stoul(val));
        } else if (key == "os") {
            p.os_tag = val;
        } else if (key == "connection") {
            auto q = quality_from_string(val);
            if (!q) throw IoError("unknown connection class: " + val);
            p.connection_class = *q;
        } else {
            throw IoError("unknown profile key: " + key);
        }
    }
    if (!p.valid()) throw IoError("profile is incomplete or invalid");
    return p;
}

DeviceProfile load_profile_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open profile: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_profile_text(ss.str());
}

ModificationSpec parse_mod_spec(const std::string& text) {
    ModificationSpec spec;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        size_t colon = item.find(':');
        std::string kind = colon == std::string::npos ? item : item.substr(0, colon);
        uint32_t param = 0;
        if (colon != std::string::npos)
            param = static_cast<uint32_t>(std::stoul(item.substr(colon + 1)));
        Transform t;
        if (kind == "truncate") t.kind = Transform::Kind::Truncate;
        else if (kind == "to_upper") t.kind = Transform::Kind::ToUpper;
        else if (kind == "strip_markup") t.kind = Transform::Kind::StripMarkup;
        else if (kind == "downsample") t.kind = Transform::Kind::DownsampleBytes;
        else throw IoError("unknown transform kind: " + kind);
        t.param = param;
        spec.transforms.push_back(t);
    }
    if (spec.transforms.empty()) throw IoError("empty modification spec");
    return spec;
}

}  // namespace mcl::client
