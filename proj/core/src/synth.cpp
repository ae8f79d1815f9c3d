#include "khist/synth.hpp"

#include <ostream>
#include <random>

#include <json.hpp>

#include "khist/errors.hpp"
#include "khist/exact_counter.hpp"
#include "khist/kmer_extract.hpp"

namespace khist {

namespace {

void append_random_bases(std::string& out, uint64_t n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> base(0, 3);
    for (uint64_t i = 0; i < n; ++i) out.push_back(kmer::code_base(base(rng)));
}

}  // namespace

SynthGenome generate_genome(const GenomeSpec& spec, uint32_t k) {
    uint64_t repeat_total = 0;
    uint32_t total_copies = 0;
    for (const RepeatBlock& b : spec.repeats) {
        if (b.length == 0 || b.copies == 0)
            throw ConfigError("repeat blocks need positive length and copies");
        repeat_total += b.length * b.copies;
        total_copies += b.copies;
    }
    if (repeat_total > spec.length)
        throw ConfigError("repeat blocks exceed the genome length");

    std::mt19937_64 rng(spec.seed);
    SynthGenome genome;
    genome.sequence.reserve(spec.length);

    // Copies of each block interleaved with evenly sized random fillers, so
    // repeats do not abut and form accidental longer repeats.
    std::vector<std::string> blocks;
    for (const RepeatBlock& b : spec.repeats) {
        std::string block;
        block.reserve(b.length);
        append_random_bases(block, b.length, rng);
        blocks.push_back(std::move(block));
    }
    const uint64_t filler_total = spec.length - repeat_total;
    const uint32_t gaps = total_copies + 1;
    uint64_t filler_used = 0;
    uint32_t gap_index = 0;
    auto emit_filler = [&] {
        ++gap_index;
        uint64_t target = filler_total * gap_index / gaps;
        append_random_bases(genome.sequence, target - filler_used, rng);
        filler_used = target;
    };
    for (size_t b = 0; b < blocks.size(); ++b)
        for (uint32_t c = 0; c < spec.repeats[b].copies; ++c) {
            emit_filler();
            genome.sequence += blocks[b];
        }
    emit_filler();

    if (k >= 1 && genome.sequence.size() >= k) {
        ExactCounter counter(k);
        KmerExtractor extractor(k, /*canonical=*/false);
        StreamStats stats;
        SequenceRecord rec{"genome", genome.sequence, ""};
        extractor.extract(rec, stats, [&](KmerView kmer) { counter.add(kmer); });
        genome.distinct_kmers = counter.distinct();
        for (const auto& [m, cls] : counter.class_sizes())
            genome.g_m[m] = uint64_t{m} * cls;
    }
    return genome;
}

ReadSetInfo generate_reads(const std::string& genome, const ReadSpec& spec,
                           uint32_t k, std::ostream& out) {
    if (spec.read_length == 0 || spec.read_length > genome.size())
        throw ConfigError("read length must be in [1, genome length]");
    if (spec.error_rate < 0.0 || spec.error_rate >= 1.0)
        throw ConfigError("error rate must be in [0, 1)");

    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<uint64_t> start_dist(
        0, genome.size() - spec.read_length);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> shift(1, 3);

    ReadSetInfo info;
    info.reads = static_cast<uint64_t>(
        std::ceil(spec.coverage * static_cast<double>(genome.size()) /
                  spec.read_length));
    const uint32_t windows =
        spec.read_length >= k ? spec.read_length - k + 1 : 0;
    info.kmers = info.reads * windows;
    info.lambda = spec.coverage * windows / spec.read_length;

    std::string bases(spec.read_length, 'A');
    const std::string quality(spec.read_length, 'I');
    for (uint64_t r = 0; r < info.reads; ++r) {
        uint64_t start = start_dist(rng);
        bases.assign(genome, start, spec.read_length);
        if (spec.error_rate > 0.0) {
            for (char& c : bases) {
                if (unit(rng) >= spec.error_rate) continue;
                int8_t code = kmer::base_code(c);
                if (code < 0) continue;
                c = kmer::code_base((code + shift(rng)) & 3);
                ++info.base_errors;
            }
        }
        out << "@r" << r << '\n' << bases << "\n+\n" << quality << '\n';
    }
    if (!out) throw IoError("failed writing synthetic reads");
    return info;
}

std::string SynthGenome::ground_truth_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["type"] = "synthetic_genome_truth";
    j["length"] = sequence.size();
    j["distinct_kmers"] = distinct_kmers;
    nlohmann::json gm = nlohmann::json::object();
    for (const auto& [m, v] : g_m) gm[std::to_string(m)] = v;
    j["g_m"] = gm;
    return j.dump(2);
}

std::string ReadSetInfo::ground_truth_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["type"] = "synthetic_reads_truth";
    j["reads"] = reads;
    j["kmers"] = kmers;
    j["base_errors"] = base_errors;
    j["lambda"] = lambda;
    return j.dump(2);
}

}  // namespace khist
