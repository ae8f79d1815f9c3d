#ifndef KHIST_KMER_EXTRACT_HPP
#define KHIST_KMER_EXTRACT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "khist/kmer.hpp"
#include "khist/seq_reader.hpp"

namespace khist {

struct StreamStats {
    uint64_t reads = 0;
    uint64_t kmers = 0;    // k-mers emitted
    uint64_t skipped = 0;  // windows dropped for ambiguous bases
    std::map<uint32_t, uint64_t> read_lengths;

    // Read length when uniform across all records, otherwise nullopt.
    std::optional<uint32_t> uniform_length() const {
        if (read_lengths.size() != 1) return std::nullopt;
        return read_lengths.begin()->first;
    }

    void merge(const StreamStats& other) {
        reads += other.reads;
        kmers += other.kmers;
        skipped += other.skipped;
        for (const auto& [l, n] : other.read_lengths) read_lengths[l] += n;
    }
};

// Sliding-window k-mer extraction with rolling forward / reverse-complement
// packing. Windows containing a non-ACGT base are skipped and counted.
// Reusable across records; not thread-safe.
class KmerExtractor {
public:
    KmerExtractor(uint32_t k, bool canonical)
        : k_(k), canonical_(canonical), words_(kmer::words_for(k)),
          fwd_(words_, 0), rc_(words_, 0) {
        if (k < 1 || k > kMaxK)
            throw std::invalid_argument("k must be in [1, 1024]");
    }

    uint32_t k() const { return k_; }
    bool canonical() const { return canonical_; }

    // Calls emit(KmerView) once per valid window, in order. Records shorter
    // than k yield nothing.
    template <typename Emit>
    void extract(const SequenceRecord& record, StreamStats& stats, Emit&& emit) {
        const uint32_t k = k_;
        const std::string& bases = record.bases;
        ++stats.reads;
        ++stats.read_lengths[static_cast<uint32_t>(bases.size())];
        if (bases.size() < k) return;

        std::span<uint64_t> fwd(fwd_.data(), words_);
        std::span<uint64_t> rc(rc_.data(), words_);
        for (uint64_t& w : fwd_) w = 0;
        for (uint64_t& w : rc_) w = 0;

        uint32_t run = 0;  // consecutive valid bases ending here
        for (size_t i = 0; i < bases.size(); ++i) {
            int8_t code = kmer::base_code(bases[i]);
            if (code < 0) {
                run = 0;
            } else {
                kmer::push_base(fwd, k, static_cast<uint64_t>(code));
                if (canonical_) kmer::push_base_rc(rc, k, static_cast<uint64_t>(code));
                ++run;
            }
            if (i + 1 >= k) {
                if (run >= k) {
                    ++stats.kmers;
                    if (canonical_) {
                        emit(KmerView{k, kmer::canonical(fwd, rc)});
                    } else {
                        emit(KmerView{k, fwd});
                    }
                } else {
                    ++stats.skipped;
                }
            }
        }
    }

private:
    uint32_t k_;
    bool canonical_;
    uint32_t words_;
    std::vector<uint64_t> fwd_;
    std::vector<uint64_t> rc_;
};

}  // namespace khist

#endif
