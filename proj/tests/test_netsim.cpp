#include <doctest.h>

#include <fstream>
#include <map>

#include "mcl/errors.hpp"
#include "mcl/netsim.hpp"
#include "support/generators.hpp"

using namespace mcl;
using namespace mcl::sim;

namespace {

// FNV-1a over a delivery transcript, for compact golden comparison.
uint64_t transcript_hash(const std::vector<Bytes>& frames) {
    uint64_t h = 1469598103934665603ull;
    for (const auto& f : frames) {
        for (uint8_t b : f) {
            h ^= b;
            h *= 1099511628211ull;
        }
        h ^= 0xFF;
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<Bytes> run_lossy(uint64_t seed) {
    LinkConfig cfg;
    cfg.seed = seed;
    cfg.loss_pct = 20;
    cfg.latency_ms = 10;
    SimLink link(cfg);
    std::mt19937_64 rng(555);
    for (int i = 0; i < 1000; ++i) {
        Bytes frame = mcl_test::random_bytes(rng, 8);
        link.send(std::move(frame), uint64_t(i));
    }
    return link.advance(100000);
}

}  // namespace

TEST_CASE("identity channel: every frame once, in order, after latency") {
    LinkConfig cfg;
    cfg.latency_ms = 50;
    SimLink link(cfg);
    link.send(to_bytes("a"), 0);
    link.send(to_bytes("b"), 10);
    CHECK(link.advance(49).empty());
    auto first = link.advance(50);
    REQUIRE(first.size() == 1);
    CHECK(first[0] == to_bytes("a"));
    auto second = link.advance(60);
    REQUIRE(second.size() == 1);
    CHECK(second[0] == to_bytes("b"));
    CHECK(link.advance(1000).empty());
}

TEST_CASE("outage schedule") {
    LinkConfig cfg;
    cfg.outages = {{1000, 2000}};
    SimLink link(cfg);
    CHECK(link.state(999) == LinkState::Up);
    CHECK(link.state(1000) == LinkState::Down);
    CHECK(link.state(1500) == LinkState::Down);
    CHECK(link.state(2000) == LinkState::Up);  // half-open
    CHECK(!link.send(to_bytes("x"), 1500));    // LinkDown observable
    CHECK(link.send(to_bytes("y"), 2000));
}

TEST_CASE("empty schedule means always up") {
    SimLink link({});
    for (uint64_t t : {0ull, 1ull, 1000000ull}) CHECK(link.state(t) == LinkState::Up);
}

TEST_CASE("clock regression is rejected") {
    SimLink link({});
    link.advance(100);
    CHECK_THROWS_AS(link.advance(99), ClockRegression);
}

TEST_CASE("seeded loss transcript is reproducible run-to-run") {
    auto a = run_lossy(42);
    auto b = run_lossy(42);
    CHECK(a == b);
    auto c = run_lossy(43);
    CHECK(a != c);  // seed actually matters

    // Golden transcript committed after manual inspection of the first run.
    std::ifstream golden(std::string(TEST_DATA_DIR) + "/netsim_transcript.txt");
    REQUIRE(golden);
    size_t want_count;
    uint64_t want_hash;
    golden >> want_count >> want_hash;
    CHECK(a.size() == want_count);
    CHECK(transcript_hash(a) == want_hash);
}

TEST_CASE("reorder draw swaps adjacent deliveries") {
    LinkConfig cfg;
    cfg.seed = 7;
    cfg.reorder_pct = 100;  // every eligible frame swaps with its predecessor
    cfg.latency_ms = 10;
    SimLink link(cfg);
    link.send(to_bytes("1"), 0);
    link.send(to_bytes("2"), 0);
    auto out = link.advance(1000);
    REQUIRE(out.size() == 2);
    CHECK(out[0] == to_bytes("2"));
    CHECK(out[1] == to_bytes("1"));
}

TEST_CASE("duplication delivers the same frame twice, never fabricates") {
    LinkConfig cfg;
    cfg.seed = 3;
    cfg.dup_pct = 100;
    SimLink link(cfg);
    link.send(to_bytes("d"), 0);
    auto out = link.advance(10);
    REQUIRE(out.size() == 2);
    CHECK(out[0] == to_bytes("d"));
    CHECK(out[1] == to_bytes("d"));
}

TEST_CASE("conservation: delivered is a sub-multiset of sent") {
    LinkConfig cfg;
    cfg.seed = 11;
    cfg.loss_pct = 25;
    cfg.dup_pct = 25;
    cfg.reorder_pct = 25;
    SimLink link(cfg);
    std::mt19937_64 rng(8);
    std::map<Bytes, int> sent_count;
    for (int i = 0; i < 500; ++i) {
        Bytes f = mcl_test::random_bytes(rng, 16);
        sent_count[f]++;
        link.send(std::move(f), uint64_t(i));
    }
    for (const auto& f : link.advance(1000000)) {
        auto it = sent_count.find(f);
        REQUIRE(it != sent_count.end());  // nothing fabricated
    }
    CHECK(link.delivered() <= link.sent() + link.duplicated());
}
