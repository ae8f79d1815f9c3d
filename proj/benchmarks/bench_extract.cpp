#include <benchmark/benchmark.h>

#include <random>

#include "khist/kmer_extract.hpp"

using namespace khist;

// Rolling canonical extraction over a synthetic 100 bp read.
static void BM_Extract(benchmark::State& state) {
    const uint32_t k = static_cast<uint32_t>(state.range(0));
    const bool canonical = state.range(1) != 0;
    std::mt19937_64 rng(11);
    SequenceRecord rec{"r", std::string(100, 'A'), ""};
    for (char& c : rec.bases) c = "ACGT"[rng() % 4];

    KmerExtractor extractor(k, canonical);
    StreamStats stats;
    uint64_t sink = 0;
    for (auto _ : state) {
        extractor.extract(rec, stats, [&](KmerView kmer) {
            sink ^= kmer.words[0];
        });
        benchmark::DoNotOptimize(sink);
    }
    state.SetItemsProcessed(state.iterations() * (rec.bases.size() - k + 1));
}
BENCHMARK(BM_Extract)
    ->Args({21, 0})
    ->Args({21, 1})
    ->Args({31, 1})
    ->Args({63, 1});
