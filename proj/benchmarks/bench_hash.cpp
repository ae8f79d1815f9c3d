#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "khist/kmer_hash.hpp"

using namespace khist;

static void BM_HashU64(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::vector<uint64_t> items(4096);
    for (uint64_t& x : items) x = rng();
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(hash_u64(items[i++ & 4095], 7));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_HashU64);

static void BM_HashWords(benchmark::State& state) {
    const uint32_t k = static_cast<uint32_t>(state.range(0));
    std::vector<uint64_t> words(kmer::words_for(k), 0x9E3779B97F4A7C15ULL);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            hash_words(std::span<const uint64_t>(words), k, 7));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_HashWords)->Arg(21)->Arg(63)->Arg(255)->Arg(1024);
