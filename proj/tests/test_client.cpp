#include <doctest.h>

#include <filesystem>

#include "mcl/client.hpp"
#include "mcl/errors.hpp"
#include "mcl/simdriver.hpp"
#include "support/generators.hpp"
#include "support/oracle_parser.hpp"

using namespace mcl;
using namespace mcl::client;
namespace fs = std::filesystem;

namespace {

ContentRequest make_req(const std::string& url, LinkQuality q = LinkQuality::Low) {
    ContentRequest req;
    req.url = url;
    req.profile.device_id = "dev-1";
    req.profile.screen_w = 320;
    req.profile.screen_h = 240;
    req.profile.supported_media = {MediaType::Data, MediaType::Graph, MediaType::Image,
                                   MediaType::Voice};
    req.profile.max_content_bytes = 1 << 20;
    req.net.quality = q;
    return req;
}

struct Rig {
    Warehouse store{99};
    sim::SimLink to_server;
    sim::SimLink to_client;
    server::Endpoint endpoint;
    SimDriver driver;

    Rig(sim::LinkConfig up = {}, sim::LinkConfig down = {})
        : to_server(up), to_client(down), endpoint(store), driver(endpoint, to_server, to_client) {}

    FetchResult fetch(const ContentRequest& req, const TickHook& hook = nullptr) {
        Session session(req);
        return driver.run_fetch(session, hook);
    }
};

}  // namespace

TEST_CASE("end-to-end fetch over clean links, all media types") {
    Rig rig;
    std::mt19937_64 rng(71);
    Bytes image = mcl_test::random_bytes(rng, 5000);  // chunked at Low quality
    rig.store.ingest("doc", MediaType::Data,
                     to_bytes("<page><title>hi</title><body><para>p</para></body></page>"));
    rig.store.ingest("graph", MediaType::Graph, to_bytes("0\t1.5\n1\t2\n2\t-0.5\n"));
    rig.store.ingest("img", MediaType::Image, image);
    rig.store.ingest("snd", MediaType::Voice, to_bytes("pcm-bytes"));

    auto out_dir = fs::temp_directory_path() / "mcl_client_test";
    fs::create_directories(out_dir);
    auto grammar = parse::load_grammar(mcl_test::oracle::kTestGrammar);

    SUBCASE("data renders to a canonical dom") {
        auto res = rig.fetch(make_req("doc"));
        REQUIRE(res.outcome == FetchOutcome::Success);
        auto shown = media_dispatch(res.item, grammar, out_dir);
        CHECK(shown.canonical ==
              "<page><title>hi</title><body><para>p</para></body></page>");
        CHECK(shown.dom.node_count() == 6);
    }
    SUBCASE("graph decodes to points") {
        auto res = rig.fetch(make_req("graph"));
        REQUIRE(res.outcome == FetchOutcome::Success);
        auto shown = media_dispatch(res.item, grammar, out_dir);
        REQUIRE(shown.points.points.size() == 3);
        CHECK(shown.points.points[0] == std::pair<double, double>{0.0, 1.5});
        CHECK(shown.points.points[2] == std::pair<double, double>{2.0, -0.5});
        CHECK(shown.points.to_csv() == "0,1.5\n1,2\n2,-0.5\n");
    }
    SUBCASE("image arrives chunked and byte-identical") {
        auto res = rig.fetch(make_req("img"));
        REQUIRE(res.outcome == FetchOutcome::Success);
        CHECK(res.item.payload == image);
        CHECK(res.chunks_received == 5);  // 5000 bytes at chunk size 1024
        auto shown = media_dispatch(res.item, grammar, out_dir);
        CHECK(shown.out_file.extension() == ".img");
        CHECK(fs::file_size(shown.out_file) == image.size());
    }
    SUBCASE("voice is written with the .voc suffix") {
        auto res = rig.fetch(make_req("snd"));
        REQUIRE(res.outcome == FetchOutcome::Success);
        auto shown = media_dispatch(res.item, grammar, out_dir);
        CHECK(shown.out_file.extension() == ".voc");
    }
    fs::remove_all(out_dir);
}

TEST_CASE("server-side errors surface as outcomes") {
    Rig rig;
    rig.store.ingest("v", MediaType::Voice, to_bytes("x"));

    CHECK(rig.fetch(make_req("missing")).outcome == FetchOutcome::NotFound);

    auto req = make_req("v");
    req.profile.supported_media = {MediaType::Data};
    CHECK(rig.fetch(req).outcome == FetchOutcome::UnsupportedMedia);

    CHECK(rig.endpoint.log().size() == 2);
    CHECK(rig.endpoint.log()[0].outcome == "not_found");
    CHECK(rig.endpoint.log()[1].outcome == "unsupported_media");
}

TEST_CASE("requested modification is applied before delivery") {
    Rig rig;
    rig.store.ingest("d", MediaType::Data, to_bytes("<b>abcdef</b>"));
    auto req = make_req("d");
    req.mod_spec = parse_mod_spec("strip_markup:0,to_upper:0,truncate:4");
    auto res = rig.fetch(req);
    REQUIRE(res.outcome == FetchOutcome::Success);
    CHECK(res.item.payload == to_bytes("ABCD"));
    CHECK(res.item.modified);
}

TEST_CASE("oversize content is auto-truncated to the profile bound") {
    Rig rig;
    rig.store.ingest("big", MediaType::Image, Bytes(50000, 0x5A));
    auto req = make_req("big");
    req.profile.max_content_bytes = 2000;
    auto res = rig.fetch(req);
    REQUIRE(res.outcome == FetchOutcome::Success);
    CHECK(res.item.payload.size() == 2000);
}

TEST_CASE("lossy links still deliver byte-identical content") {
    sim::LinkConfig up;
    up.seed = 1001;
    up.loss_pct = 15;
    up.latency_ms = 20;
    sim::LinkConfig down;
    down.seed = 1002;
    down.loss_pct = 15;
    down.dup_pct = 10;
    down.reorder_pct = 10;
    down.latency_ms = 20;
    Rig rig(up, down);
    std::mt19937_64 rng(73);
    Bytes payload = mcl_test::random_bytes(rng, 30000);
    rig.store.ingest("big", MediaType::Image, payload);

    auto res = rig.fetch(make_req("big"));
    REQUIRE(res.outcome == FetchOutcome::Success);
    CHECK(res.item.payload == payload);
    CHECK(rig.endpoint.total_retransmissions() > 0);
}

TEST_CASE("outage mid-delivery: frames buffer and flush on reconnect") {
    sim::LinkConfig down;
    down.outages = {{0, 500}};
    Rig rig({}, down);
    std::mt19937_64 rng(79);
    Bytes payload = mcl_test::random_bytes(rng, 8000);
    rig.store.ingest("u", MediaType::Voice, payload);

    auto res = rig.fetch(make_req("u"));
    REQUIRE(res.outcome == FetchOutcome::Success);
    CHECK(res.item.payload == payload);
    CHECK(rig.driver.stats().buffered_frames > 0);
}

TEST_CASE("mid-stream modification supersedes the old delivery") {
    Rig rig;
    Bytes payload(20 * 1024, 'm');
    rig.store.ingest("movie", MediaType::Image, payload);

    bool sent_mod = false;
    auto hook = [&](Session& s, uint64_t) {
        if (!sent_mod && s.chunks_received() >= 3) {
            REQUIRE(s.request_modification(
                ModificationSpec{{Transform{Transform::Kind::DownsampleBytes, 4}}}));
            sent_mod = true;
        }
    };
    Session session(make_req("movie"));
    auto res = rig.driver.run_fetch(session, hook);
    REQUIRE(sent_mod);
    REQUIRE(res.outcome == FetchOutcome::Success);
    CHECK(session.mod_acknowledged());
    Bytes expect;
    for (size_t i = 0; i < payload.size(); i += 4) expect.push_back(payload[i]);
    CHECK(res.item.payload == expect);
    CHECK(res.item.modified);
}

TEST_CASE("mod request for an unknown content id is an error") {
    Rig rig;
    rig.store.ingest("x", MediaType::Data, to_bytes("hi"));
    Session session(make_req("x"));
    auto res = rig.driver.run_fetch(session);
    REQUIRE(res.outcome == FetchOutcome::Success);

    // Forge a mod request with a fabricated id; it must be answered, not hang.
    ContentId bogus{0xEE};
    rig.endpoint.on_frame(
        make_mod_request_frame(bogus, ModificationSpec{{Transform{Transform::Kind::ToUpper, 0}}}),
        rig.driver.now());
    auto out = rig.endpoint.take_outgoing();
    REQUIRE(out.size() == 1);
    CHECK(out[0].type == FrameType::Error);
    CHECK(parse_error_frame(out[0]).code == ErrorCode::UnknownContent);
}

TEST_CASE("graph payload with a malformed line reports the line number") {
    parse::DtdGrammar g;
    ContentItem it;
    it.media = MediaType::Graph;
    it.payload = to_bytes("0\t1\nbroken line\n");
    try {
        media_dispatch(it, g, fs::temp_directory_path());
        FAIL("expected GraphFormatError");
    } catch (const GraphFormatError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("profile file parsing") {
    auto p = parse_profile_text(
        "device_id=phone-7\n"
        "screen=640x480\n"
        "media=data,graph\n"
        "max_content_bytes=4096\n"
        "os=mclos-2\n"
        "connection=low\n");
    CHECK(p.device_id == "phone-7");
    CHECK(p.screen_w == 640);
    CHECK(p.screen_h == 480);
    CHECK(p.supported_media == std::set<MediaType>{MediaType::Data, MediaType::Graph});
    CHECK(p.max_content_bytes == 4096);
    CHECK(p.os_tag == "mclos-2");
    CHECK(p.connection_class == LinkQuality::Low);
    CHECK(p.valid());

    CHECK_THROWS_AS(parse_profile_text("screen=banana\n"), IoError);
}

TEST_CASE("mod spec mini-syntax") {
    auto spec = parse_mod_spec("truncate:100,strip_markup:0");
    REQUIRE(spec.transforms.size() == 2);
    CHECK(spec.transforms[0] == Transform{Transform::Kind::Truncate, 100});
    CHECK(spec.transforms[1] == Transform{Transform::Kind::StripMarkup, 0});
    CHECK_THROWS_AS(parse_mod_spec("explode:1"), IoError);
    CHECK_THROWS_AS(parse_mod_spec(""), IoError);
}
