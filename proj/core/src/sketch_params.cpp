#include "khist/sketch_params.hpp"

#include <unordered_set>

namespace khist {

namespace {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

void SketchParams::validate() const {
    if (instances < 1 || instances % 2 == 0)
        throw ConfigError("instance count t must be odd and >= 1, got " +
                          std::to_string(instances));
    if (log2_counters < 1 || log2_counters > 30)
        throw ConfigError("log2_counters must be in [1, 30], got " +
                          std::to_string(log2_counters));
    if (aux_size < 8 || aux_size > (1u << 16))
        throw ConfigError("aux label universe u must be in [8, 65536], got " +
                          std::to_string(aux_size));
    if (levels < 1 || levels > 64)
        throw ConfigError("level count M must be in [1, 64], got " +
                          std::to_string(levels));
    if (seeds.size() != instances)
        throw ConfigError("expected " + std::to_string(instances) + " seeds, got " +
                          std::to_string(seeds.size()));
    std::unordered_set<uint64_t> distinct(seeds.begin(), seeds.end());
    if (distinct.size() != seeds.size())
        throw ConfigError("instance seeds must be pairwise distinct");
}

std::vector<uint64_t> SketchParams::expand_seed(uint64_t master, uint32_t instances) {
    std::vector<uint64_t> out;
    out.reserve(instances);
    std::unordered_set<uint64_t> seen;
    uint64_t state = master;
    while (out.size() < instances) {
        uint64_t s = splitmix64(state);
        if (seen.insert(s).second) out.push_back(s);
    }
    return out;
}

void SketchParams::finalize(uint64_t master_seed) {
    if (seeds.empty()) seeds = expand_seed(master_seed, instances);
    validate();
}

uint64_t SketchParams::max_cell_bytes() const {
    return uint64_t{instances} * levels * counters() * 6;
}

}  // namespace khist
