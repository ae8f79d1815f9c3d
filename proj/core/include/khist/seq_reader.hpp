#ifndef KHIST_SEQ_READER_HPP
#define KHIST_SEQ_READER_HPP

#include <cstdint>
#include <memory>
#include <string>

namespace khist {

struct SequenceRecord {
    std::string id;
    std::string bases;
    std::string quality;  // empty for FASTA
};

enum class SeqFormat { autodetect, fasta, fastq };

// Streaming FASTA/FASTQ reader. Input may be gzip-compressed (detected
// transparently) and "-" reads standard input. Multi-line FASTA sequences
// are concatenated; FASTQ quality must match the sequence length.
class SequenceReader {
public:
    explicit SequenceReader(const std::string& path,
                            SeqFormat format = SeqFormat::autodetect);
    ~SequenceReader();

    SequenceReader(SequenceReader&&) noexcept;
    SequenceReader& operator=(SequenceReader&&) noexcept;

    // Returns false at clean end of input; throws ParseError / IoError.
    bool next(SequenceRecord& record);

    // Offset (in uncompressed bytes) of the start of the last record
    // returned; used in error messages.
    uint64_t record_offset() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace khist

#endif
