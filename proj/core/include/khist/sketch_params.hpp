#ifndef KHIST_SKETCH_PARAMS_HPP
#define KHIST_SKETCH_PARAMS_HPP

#include <cstdint>
#include <vector>

#include "khist/errors.hpp"

namespace khist {

// Parameters of the abundance sketch.
//
// The structure holds t independent instances; each instance has `levels`
// sampling levels of 2^log2_counters cells. Every cell stores a saturating
// occurrence counter plus an auxiliary label from {0, ..., aux_size-1} used
// to detect collisions. Memory grows with log2_counters; accuracy improves
// with it.
struct SketchParams {
    uint32_t instances = 7;       // t; must be odd so the median is a sample value
    uint32_t log2_counters = 16;  // log2 r
    uint32_t aux_size = 1u << 16; // u; undetected collisions occur w.p. <= 1/u
    uint32_t levels = 64;         // M
    uint32_t k = 0;               // recorded in sketch files; 0 = generic item stream
    bool canonical = true;        // strand-collapsed k-mers (recorded in files)
    std::vector<uint64_t> seeds;  // one per instance, pairwise distinct

    uint64_t counters() const { return uint64_t{1} << log2_counters; }

    // Throws ConfigError on any invariant violation.
    void validate() const;

    // Derives `instances` pairwise-distinct seeds from one master seed.
    static std::vector<uint64_t> expand_seed(uint64_t master, uint32_t instances);

    // Fills `seeds` from a master seed if empty, then validates.
    void finalize(uint64_t master_seed);

    // Upper bound on cell storage if every level of every instance were
    // allocated. Levels are allocated lazily, so actual usage is far lower.
    uint64_t max_cell_bytes() const;

    bool operator==(const SketchParams&) const = default;
};

}  // namespace khist

#endif
