#ifndef KHIST_SKETCH_HPP
#define KHIST_SKETCH_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "khist/histogram.hpp"
#include "khist/sketch_params.hpp"

namespace khist {

#pragma pack(push, 2)
// One counter cell: occurrence count v plus auxiliary collision label p.
// v == -1 marks a detected collision ('dirty'); dirty cells are absorbing.
// p is meaningful only while v >= 1.
struct CounterCell {
    int32_t v = 0;
    uint16_t p = 0;

    static constexpr int32_t kDirty = -1;
    static constexpr int32_t kMaxCount = std::numeric_limits<int32_t>::max() - 1;

    bool dirty() const { return v == kDirty; }
    bool empty() const { return v == 0; }
    bool operator==(const CounterCell&) const = default;
};
#pragma pack(pop)
static_assert(sizeof(CounterCell) == 6, "cells are stored packed");

// Destination of a hashed item: sampling level, counter index, aux label.
struct LevelAddress {
    uint32_t level;    // w in {1, ..., M}
    uint64_t counter;  // c in {0, ..., r-1}
    uint16_t label;    // j in {0, ..., u-1}
};

// Decomposes a 64-bit hash into (w, c, j). The level is 1 + the number of
// trailing zero bits (level M for hash 0, clamped to M otherwise), so level
// w captures roughly a 2^-w fraction of distinct items.
LevelAddress locate(uint64_t hash, const SketchParams& params);

// One seeded copy of the structure: M arrays of r cells, allocated on first
// touch (level w is hit with probability 2^-w, so deep levels usually stay
// empty).
class SketchInstance {
public:
    SketchInstance(uint64_t seed, const SketchParams& params);

    uint64_t seed() const { return seed_; }

    void add(const LevelAddress& addr);

    // nullptr when the level has never been touched (equivalent to all-zero).
    const std::vector<CounterCell>* level(uint32_t w) const {
        return levels_[w - 1].empty() ? nullptr : &levels_[w - 1];
    }
    uint32_t level_count() const { return static_cast<uint32_t>(levels_.size()); }

    void merge(const SketchInstance& other);

    // Count of cells at level w holding exactly `value` (0 for untouched
    // levels unless value == 0, which counts all r cells).
    uint64_t census(uint32_t w, int32_t value) const;

    uint64_t allocated_cells() const;

private:
    friend class SketchCodec;
    std::vector<CounterCell>& touch(uint32_t w);

    uint64_t seed_;
    uint64_t counters_;
    std::vector<std::vector<CounterCell>> levels_;
};

// The abundance sketch: t independent instances sharing parameters but not
// seeds. Not safe for concurrent mutation; the supported parallel pattern is
// one private sketch per worker followed by merge().
class AbundanceSketch {
public:
    explicit AbundanceSketch(SketchParams params);

    const SketchParams& params() const { return params_; }
    uint64_t total_updates() const { return total_updates_; }
    const std::vector<SketchInstance>& instances() const { return instances_; }

    // Feeds one item given its per-instance hash values (hashes.size() == t,
    // hashes[i] computed with instances()[i].seed()).
    void update(std::span<const uint64_t> hashes);

    // Cell-wise combine; other must have identical params including seeds.
    // The merged v-census equals that of a single sketch fed both streams.
    void merge(const AbundanceSketch& other);

    // Estimate of the number of distinct items F0 (median over instances).
    // Throws EstimationError when every instance is saturated.
    double estimate_f0() const;

    // Estimate of f_i, the number of distinct items with multiplicity exactly
    // i, given an F0 estimate for the same sketch.
    double estimate_fi(uint32_t multiplicity, double f0_hat) const;

    // Batches estimate_f0 + estimate_fi for i in [1, max_multiplicity].
    AbundanceHistogram estimate_histogram(uint32_t max_multiplicity) const;

private:
    friend class SketchCodec;

    SketchParams params_;
    std::vector<SketchInstance> instances_;
    uint64_t total_updates_ = 0;
};

}  // namespace khist

#endif
