#ifndef KHIST_SYNTH_HPP
#define KHIST_SYNTH_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace khist {

struct RepeatBlock {
    uint64_t length = 0;
    uint32_t copies = 1;
};

// Synthetic genome: i.i.d. random bases with planted repeat blocks, so the
// multiplicity structure is known by construction.
struct GenomeSpec {
    uint64_t length = 0;
    std::vector<RepeatBlock> repeats;
    uint64_t seed = 1;
};

struct SynthGenome {
    std::string sequence;
    // For the k supplied at generation time, computed by exact counting on
    // the sequence itself: multiplicity m -> number of genome positions whose
    // k-mer occurs m times (g_m = m * |G_m|).
    std::map<uint32_t, uint64_t> g_m;
    uint64_t distinct_kmers = 0;

    std::string ground_truth_json() const;
};

SynthGenome generate_genome(const GenomeSpec& spec, uint32_t k);

// Uniform-coverage single-end reads with i.i.d. substitution errors; reads
// are drawn from the forward strand of a linear genome and never wrap.
struct ReadSpec {
    double coverage = 30.0;
    uint32_t read_length = 100;
    double error_rate = 0.0;  // per-base substitution probability
    uint64_t seed = 1;
};

struct ReadSetInfo {
    uint64_t reads = 0;
    uint64_t kmers = 0;        // N for the supplied k, before ambiguity skips
    uint64_t base_errors = 0;  // substitutions actually applied
    double lambda = 0.0;       // c (l - k + 1) / l

    std::string ground_truth_json() const;
};

// Writes FASTQ to `out`; byte-identical for identical spec + seed.
ReadSetInfo generate_reads(const std::string& genome, const ReadSpec& spec,
                           uint32_t k, std::ostream& out);

}  // namespace khist

#endif
