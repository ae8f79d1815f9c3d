#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "khist/kmer_hash.hpp"
#include "khist/sketch.hpp"

using namespace khist;

// Full update path: t hashes + t cell updates per item.
static void BM_SketchUpdate(benchmark::State& state) {
    SketchParams p;
    p.instances = static_cast<uint32_t>(state.range(0));
    p.log2_counters = 16;
    p.finalize(3);
    AbundanceSketch sketch(p);
    std::mt19937_64 rng(5);
    std::vector<uint64_t> items(1 << 16);
    for (uint64_t& x : items) x = rng() % (1 << 14);
    std::vector<uint64_t> h(p.instances);

    size_t i = 0;
    for (auto _ : state) {
        uint64_t item = items[i++ & 0xFFFF];
        for (uint32_t s = 0; s < p.instances; ++s)
            h[s] = hash_u64(item, p.seeds[s]);
        sketch.update(h);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SketchUpdate)->Arg(1)->Arg(7);

static void BM_HistogramEstimate(benchmark::State& state) {
    SketchParams p;
    p.instances = 7;
    p.log2_counters = 16;
    p.finalize(9);
    AbundanceSketch sketch(p);
    std::vector<uint64_t> h(p.instances);
    for (uint64_t item = 0; item < 500000; ++item) {
        for (uint32_t s = 0; s < p.instances; ++s)
            h[s] = hash_u64(item, p.seeds[s]);
        sketch.update(h);
        if (item % 3 == 0) sketch.update(h);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(sketch.estimate_histogram(100));
    }
}
BENCHMARK(BM_HistogramEstimate);
