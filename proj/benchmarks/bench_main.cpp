#include <benchmark/benchmark.h>

#include <random>

#include "mcl/frame.hpp"
#include "mcl/modloop.hpp"
#include "mcl/tokenizer.hpp"
#include "mcl/transport.hpp"

using namespace mcl;

namespace {

Bytes random_payload(size_t n) {
    std::mt19937_64 rng(42);
    Bytes out(n);
    for (auto& b : out) b = uint8_t(rng());
    return out;
}

void bench_encode_frame(benchmark::State& state) {
    Chunk c{ContentId{1}, 0, 1, random_payload(size_t(state.range(0)))};
    for (auto _ : state) {
        auto wire = encode_frame(make_chunk_frame(c, MediaType::Image, 0));
        benchmark::DoNotOptimize(wire);
    }
    state.SetBytesProcessed(int64_t(state.iterations()) * state.range(0));
}

void bench_decode_frame(benchmark::State& state) {
    Chunk c{ContentId{1}, 0, 1, random_payload(size_t(state.range(0)))};
    Bytes wire = encode_frame(make_chunk_frame(c, MediaType::Image, 0));
    for (auto _ : state) {
        auto f = decode_frame(wire);
        benchmark::DoNotOptimize(f);
    }
    state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(wire.size()));
}

void bench_fragment_reassemble(benchmark::State& state) {
    Bytes payload = random_payload(size_t(state.range(0)));
    ContentId id{7};
    for (auto _ : state) {
        auto chunks = transport::fragment(payload, 4096, id);
        modloop::Reassembly r(id, chunks[0].total);
        for (const auto& c : chunks) r.integrate(c);
        benchmark::DoNotOptimize(r.payload());
    }
    state.SetBytesProcessed(int64_t(state.iterations()) * state.range(0));
}

void bench_tokenize(benchmark::State& state) {
    std::string doc = "<page><title>benchmark</title><body>";
    for (int i = 0; i < state.range(0); ++i)
        doc += "<para style=\"plain\">some body text for paragraph " + std::to_string(i) +
               "</para>";
    doc += "</body></page>";
    Bytes bytes = to_bytes(doc);
    for (auto _ : state) {
        auto toks = parse::tokenize_all(bytes);
        benchmark::DoNotOptimize(toks);
    }
    state.SetBytesProcessed(int64_t(state.iterations()) * int64_t(bytes.size()));
}

}  // namespace

BENCHMARK(bench_encode_frame)->Arg(1024)->Arg(8192)->Arg(65536);
BENCHMARK(bench_decode_frame)->Arg(1024)->Arg(8192)->Arg(65536);
BENCHMARK(bench_fragment_reassemble)->Arg(64 * 1024)->Arg(1024 * 1024);
BENCHMARK(bench_tokenize)->Arg(10)->Arg(1000);

BENCHMARK_MAIN();
