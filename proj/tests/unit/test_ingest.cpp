#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "khist/ingest.hpp"
#include "khist/sketch_io.hpp"

using namespace khist;

namespace {

std::string write_reads(const std::string& name, uint64_t reads, uint64_t seed) {
    std::string path = "/tmp/khist_ingest_" + name;
    std::ofstream out(path);
    std::mt19937_64 rng(seed);
    for (uint64_t i = 0; i < reads; ++i) {
        std::string bases(60, 'A');
        for (char& c : bases) c = "ACGT"[rng() % 4];
        out << "@r" << i << '\n' << bases << "\n+\n" << std::string(60, 'I') << '\n';
    }
    return path;
}

std::string serialize(const AbundanceSketch& sketch) {
    std::ostringstream out(std::ios::binary);
    SketchCodec::write(sketch, out);
    return out.str();
}

SketchParams small_params() {
    SketchParams p;
    p.instances = 3;
    p.log2_counters = 10;
    p.aux_size = 1024;
    p.k = 15;
    p.finalize(5);
    return p;
}

}  // namespace

TEST_CASE("worker count does not change the resulting sketch") {
    std::string path = write_reads("w.fq", 400, 11);
    IngestResult one = ingest({path}, small_params(), 1);
    CHECK(one.stats.reads == 400);
    CHECK(one.stats.kmers == 400 * (60 - 15 + 1));
    for (uint32_t workers : {2u, 3u, 8u}) {
        IngestResult many = ingest({path}, small_params(), workers);
        CHECK(serialize(many.sketch) == serialize(one.sketch));
        CHECK(many.stats.reads == one.stats.reads);
        CHECK(many.stats.kmers == one.stats.kmers);
    }
    std::remove(path.c_str());
}

TEST_CASE("multiple inputs concatenate") {
    std::string a = write_reads("a.fq", 100, 1);
    std::string b = write_reads("b.fq", 150, 2);
    IngestResult both = ingest({a, b}, small_params(), 2);
    CHECK(both.stats.reads == 250);
    CHECK(both.sketch.total_updates() == both.stats.kmers);
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("empty input file produces an empty sketch") {
    std::string path = "/tmp/khist_ingest_empty.fq";
    std::ofstream(path).close();
    IngestResult result = ingest({path}, small_params(), 4);
    CHECK(result.stats.reads == 0);
    CHECK(result.sketch.total_updates() == 0);
    std::remove(path.c_str());
}

TEST_CASE("reader errors surface through multi-threaded ingestion") {
    std::string path = "/tmp/khist_ingest_bad.fq";
    {
        std::ofstream out(path);
        out << "@r1\nACGT\n+\nII\n";  // quality too short
    }
    CHECK_THROWS_AS(ingest({path}, small_params(), 1), ParseError);
    CHECK_THROWS_AS(ingest({path}, small_params(), 4), ParseError);
    std::remove(path.c_str());
    CHECK_THROWS_AS(ingest({"/tmp/khist_no_such.fq"}, small_params(), 2), IoError);
}
