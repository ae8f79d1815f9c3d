#ifndef KHIST_KMER_HASH_HPP
#define KHIST_KMER_HASH_HPP

#include <cstdint>
#include <span>

#include "khist/kmer.hpp"

namespace khist {

// 64-bit finalizer with full avalanche (Stafford mix13 variant).
inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seeded hash over the packed k-mer words. Deterministic per (words, k,
// seed); distinct seeds give independent-looking streams. Used both for the
// per-instance sketch hashes and for generic 64-bit item streams.
inline uint64_t hash_words(std::span<const uint64_t> words, uint32_t k,
                           uint64_t seed) {
    uint64_t h = seed ^ (uint64_t{k} * 0x9E3779B97F4A7C15ULL);
    uint64_t i = 0;
    for (uint64_t w : words) {
        h = mix64(h ^ (w + ++i * 0xD6E8FEB86659FD93ULL));
    }
    return mix64(h);
}

inline uint64_t hash_u64(uint64_t item, uint64_t seed) {
    return mix64(seed ^ mix64(item + 0x9E3779B97F4A7C15ULL));
}

inline uint64_t hash_kmer(KmerView view, uint64_t seed) {
    return hash_words(view.words, view.k, seed);
}

}  // namespace khist

#endif
