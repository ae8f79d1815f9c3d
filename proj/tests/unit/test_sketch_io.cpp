#include <doctest.h>

#include <random>
#include <sstream>

#include "khist/kmer_hash.hpp"
#include "khist/sketch_io.hpp"

using namespace khist;

namespace {

AbundanceSketch sample_sketch(uint64_t master_seed, uint64_t items) {
    SketchParams p;
    p.instances = 3;
    p.log2_counters = 8;
    p.aux_size = 256;
    p.k = 21;
    p.finalize(master_seed);
    AbundanceSketch sketch(p);
    std::vector<uint64_t> h(p.instances);
    std::mt19937_64 rng(master_seed);
    for (uint64_t i = 0; i < items; ++i) {
        uint64_t item = rng() % (items / 2 + 1);
        for (size_t s = 0; s < h.size(); ++s) h[s] = hash_u64(item, p.seeds[s]);
        sketch.update(h);
    }
    return sketch;
}

std::string serialize(const AbundanceSketch& sketch) {
    std::ostringstream out(std::ios::binary);
    SketchCodec::write(sketch, out);
    return out.str();
}

}  // namespace

TEST_CASE("serialization round trip preserves everything") {
    AbundanceSketch original = sample_sketch(42, 5000);
    std::string bytes = serialize(original);

    std::istringstream in(bytes, std::ios::binary);
    AbundanceSketch restored = SketchCodec::read(in);

    CHECK(restored.params() == original.params());
    CHECK(restored.total_updates() == original.total_updates());
    CHECK(serialize(restored) == bytes);  // byte-stable
    CHECK(restored.estimate_f0() == original.estimate_f0());
}

TEST_CASE("file format starts with the magic") {
    std::string bytes = serialize(sample_sketch(1, 100));
    CHECK(bytes.substr(0, 4) == "KHSK");
}

TEST_CASE("corruption is detected by the checksum") {
    std::string bytes = serialize(sample_sketch(7, 3000));
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        std::string bad = bytes;
        // Corrupt past the parameter header (corruption there can surface as
        // a parameter validation failure before the CRC is reached).
        size_t pos = 64 + rng() % (bad.size() - 64);
        bad[pos] ^= static_cast<char>(1 + rng() % 255);
        std::istringstream in(bad, std::ios::binary);
        CHECK_THROWS_AS(SketchCodec::read(in), FormatError);
    }
}

TEST_CASE("truncation and bad magic are rejected") {
    std::string bytes = serialize(sample_sketch(9, 1000));
    {
        std::istringstream in(bytes.substr(0, bytes.size() / 2), std::ios::binary);
        CHECK_THROWS_AS(SketchCodec::read(in), FormatError);
    }
    {
        std::string bad = bytes;
        bad[0] = 'X';
        std::istringstream in(bad, std::ios::binary);
        CHECK_THROWS_AS(SketchCodec::read(in), FormatError);
    }
}

TEST_CASE("save/load round trip through a file") {
    AbundanceSketch original = sample_sketch(11, 2000);
    std::string path = "/tmp/khist_io_test.sk";
    SketchCodec::save(original, path);
    AbundanceSketch restored = SketchCodec::load(path);
    CHECK(serialize(restored) == serialize(original));
    CHECK_THROWS_AS(SketchCodec::load("/tmp/khist_io_missing.sk"), IoError);
    std::remove(path.c_str());
}
