#include <fstream>
#include <sstream>

#include "mcl/client.hpp"
#include "mcl/errors.hpp"

namespace mcl::client {

std::string PointSeries::to_csv() const {
    std::ostringstream out;
    for (const auto& [x, y] : points) out << x << ',' << y << '\n';
    return out.str();
}

namespace {

PointSeries decode_graph(const Bytes& payload) {
    PointSeries series;
    std::istringstream in(mcl::to_string(payload));
    std::string line;
    uint32_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw GraphFormatError(line_no, "graph line missing tab separator");
        try {
            size_t used = 0;
            double x = std::stod(line.substr(0, tab), &used);
            if (used != tab) throw std::invalid_argument("trailing junk");
            std::string ys = line.substr(tab + 1);
            double y = std::stod(ys, &used);
            if (used != ys.size()) throw std::invalid_argument("trailing junk");
            series.points.emplace_back(x, y);
        } catch (const std::exception&) {
            throw GraphFormatError(line_no, "malformed graph point: " + line);
        }
    }
    return series;
}

}  // namespace

DisplayedContent media_dispatch(const ContentItem& item, const parse::DtdGrammar& grammar,
                                const std::filesystem::path& out_dir) {
    DisplayedContent out;
    out.media = item.media;
    switch (item.media) {
        case MediaType::Data: {
            parse::Parser p(grammar);
            p.open_stream(item.payload);
            p.tokenize_source();
            out.dom = p.iterate();
            p.destroy();
            out.canonical = parse::serialize_canonical(out.dom);
            break;
        }
        case MediaType::Graph:
            out.points = decode_graph(item.payload);
            break;
        case MediaType::Image:
        case MediaType::Voice: {
            const char* ext = item.media == MediaType::Image ? ".img" : ".voc";
            out.out_file = out_dir / (id_to_hex(item.content_id) + ext);
            std::ofstream f(out.out_file, std::ios::binary | std::ios::trunc);
            if (!f) throw IoError("cannot write " + out.out_file.string());
            f.write(reinterpret_cast<const char*>(item.payload.data()),
                    static_cast<std::streamsize>(item.payload.size()));
            if (!f) throw IoError("write failed: " + out.out_file.string());
            break;
        }
    }
    return out;
}

}  // namespace mcl::client
