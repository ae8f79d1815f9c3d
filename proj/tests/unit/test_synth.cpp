#include <doctest.h>

#include <cmath>
#include <sstream>

#include "khist/errors.hpp"
#include "khist/synth.hpp"

using namespace khist;

TEST_CASE("genome generation is deterministic and sized exactly") {
    GenomeSpec spec;
    spec.length = 50000;
    spec.repeats = {{500, 2}, {300, 3}};
    spec.seed = 9;
    SynthGenome a = generate_genome(spec, 15);
    SynthGenome b = generate_genome(spec, 15);
    CHECK(a.sequence == b.sequence);
    CHECK(a.sequence.size() == 50000);
    CHECK(a.sequence.find_first_not_of("ACGT") == std::string::npos);

    spec.seed = 10;
    CHECK(generate_genome(spec, 15).sequence != a.sequence);
}

TEST_CASE("planted repeats appear in the multiplicity table") {
    GenomeSpec spec;
    spec.length = 200000;
    spec.repeats = {{2000, 2}, {1000, 3}};
    spec.seed = 21;
    const uint32_t k = 15;
    SynthGenome genome = generate_genome(spec, k);

    // A block of length L copied m times contributes about m (L - k + 1)
    // positions of multiplicity m; random background adds almost nothing.
    double expect2 = 2.0 * (2000 - k + 1);
    double expect3 = 3.0 * (1000 - k + 1);
    CHECK(std::abs(genome.g_m.at(2) - expect2) / expect2 < 0.02);
    CHECK(std::abs(genome.g_m.at(3) - expect3) / expect3 < 0.02);

    // Unique k-mers dominate and all positions are accounted for.
    uint64_t positions = 0;
    for (const auto& [m, gm] : genome.g_m) positions += gm;
    CHECK(positions == spec.length - k + 1);
    CHECK(genome.g_m.at(1) > 0.9 * (spec.length - k + 1));
    CHECK(genome.distinct_kmers > 0);
}

TEST_CASE("invalid genome specs are rejected") {
    GenomeSpec spec;
    spec.length = 1000;
    spec.repeats = {{600, 2}};  // 1200 > 1000
    CHECK_THROWS_AS(generate_genome(spec, 15), ConfigError);
    spec.repeats = {{0, 2}};
    CHECK_THROWS_AS(generate_genome(spec, 15), ConfigError);
}

TEST_CASE("read generation: determinism, coverage law, containment") {
    GenomeSpec gspec;
    gspec.length = 20000;
    gspec.seed = 3;
    SynthGenome genome = generate_genome(gspec, 15);

    ReadSpec rspec;
    rspec.coverage = 12.0;
    rspec.read_length = 80;
    rspec.error_rate = 0.0;
    rspec.seed = 17;

    std::ostringstream a, b;
    ReadSetInfo info = generate_reads(genome.sequence, rspec, 15, a);
    generate_reads(genome.sequence, rspec, 15, b);
    CHECK(a.str() == b.str());

    CHECK(info.reads == static_cast<uint64_t>(std::ceil(12.0 * 20000 / 80)));
    CHECK(info.kmers == info.reads * (80 - 15 + 1));
    CHECK(info.lambda == doctest::Approx(12.0 * (80 - 15 + 1) / 80.0));
    CHECK(info.base_errors == 0);

    // Error-free reads are verbatim substrings of the genome.
    std::istringstream in(a.str());
    std::string id, bases, plus, qual;
    int checked = 0;
    while (std::getline(in, id) && std::getline(in, bases) &&
           std::getline(in, plus) && std::getline(in, qual)) {
        REQUIRE(id[0] == '@');
        REQUIRE(bases.size() == 80);
        REQUIRE(qual.size() == 80);
        if (++checked <= 50) CHECK(genome.sequence.find(bases) != std::string::npos);
    }
    CHECK(static_cast<uint64_t>(checked) == info.reads);
}

TEST_CASE("substitution errors land at about the requested rate") {
    GenomeSpec gspec;
    gspec.length = 30000;
    gspec.seed = 5;
    SynthGenome genome = generate_genome(gspec, 15);
    ReadSpec rspec;
    rspec.coverage = 20.0;
    rspec.read_length = 100;
    rspec.error_rate = 0.01;
    rspec.seed = 23;
    std::ostringstream out;
    ReadSetInfo info = generate_reads(genome.sequence, rspec, 15, out);
    double bases = static_cast<double>(info.reads) * 100;
    double expect = bases * 0.01;
    CHECK(std::abs(info.base_errors - expect) < 4 * std::sqrt(expect));
}

TEST_CASE("invalid read specs are rejected") {
    std::ostringstream out;
    ReadSpec bad;
    bad.read_length = 0;
    CHECK_THROWS_AS(generate_reads("ACGTACGT", bad, 3, out), ConfigError);
    bad.read_length = 100;  // longer than the genome
    CHECK_THROWS_AS(generate_reads("ACGTACGT", bad, 3, out), ConfigError);
    bad.read_length = 4;
    bad.error_rate = 1.5;
    CHECK_THROWS_AS(generate_reads("ACGTACGT", bad, 3, out), ConfigError);
}
