#ifndef KHIST_INGEST_HPP
#define KHIST_INGEST_HPP

#include <string>
#include <vector>

#include "khist/kmer_extract.hpp"
#include "khist/sketch.hpp"

namespace khist {

struct IngestResult {
    AbundanceSketch sketch;
    StreamStats stats;
};

// Streams all records from `paths` (FASTA/FASTQ, optionally gzipped, "-" for
// stdin) into an abundance sketch. Work is distributed as whole records to
// `workers` share-nothing private sketches which are merged at the end, so
// the resulting v-census is identical for any worker count.
IngestResult ingest(const std::vector<std::string>& paths, const SketchParams& params,
                    uint32_t workers = 1);

}  // namespace khist

#endif
