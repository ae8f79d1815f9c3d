#include "khist/seq_reader.hpp"

#include <cstring>
#include <vector>

#include <zlib.h>

#include "khist/errors.hpp"

namespace khist {

struct SequenceReader::Impl {
    gzFile file = nullptr;
    std::string path;
    SeqFormat format = SeqFormat::autodetect;
    std::vector<char> buf;
    size_t pos = 0;
    size_t len = 0;
    bool eof = false;
    uint64_t offset = 0;         // uncompressed bytes consumed
    uint64_t record_start = 0;
    int pending = -1;            // one-character pushback ('>' or '@' sentinels)

    explicit Impl(const std::string& p, SeqFormat fmt)
        : path(p), format(fmt), buf(1 << 16) {
        file = p == "-" ? gzdopen(0, "rb") : gzopen(p.c_str(), "rb");
        if (!file) throw IoError("cannot open '" + p + "'");
    }
    ~Impl() {
        if (file) gzclose(file);
    }

    int get() {
        if (pending >= 0) {
            int c = pending;
            pending = -1;
            ++offset;
            return c;
        }
        if (pos >= len) {
            if (eof) return -1;
            int n = gzread(file, buf.data(), static_cast<unsigned>(buf.size()));
            if (n < 0) {
                int errnum = 0;
                const char* msg = gzerror(file, &errnum);
                throw IoError("read error on '" + path + "': " +
                              (msg ? msg : "unknown"));
            }
            if (n == 0) {
                eof = true;
                return -1;
            }
            pos = 0;
            len = static_cast<size_t>(n);
        }
        ++offset;
        return static_cast<unsigned char>(buf[pos++]);
    }

    void unget(int c) {
        pending = c;
        --offset;
    }

    // Reads to end of line, appending to out; returns false on EOF with
    // nothing read.
    bool read_line(std::string& out) {
        int c = get();
        if (c < 0) return false;
        while (c >= 0 && c != '\n') {
            if (c != '\r') out.push_back(static_cast<char>(c));
            c = get();
        }
        return true;
    }

    int peek_significant() {
        int c = get();
        while (c == '\n' || c == '\r') c = get();
        if (c >= 0) unget(c);
        return c;
    }
};

SequenceReader::SequenceReader(const std::string& path, SeqFormat format)
    : impl_(std::make_unique<Impl>(path, format)) {}

SequenceReader::~SequenceReader() = default;
SequenceReader::SequenceReader(SequenceReader&&) noexcept = default;
SequenceReader& SequenceReader::operator=(SequenceReader&&) noexcept = default;

uint64_t SequenceReader::record_offset() const { return impl_->record_start; }

bool SequenceReader::next(SequenceRecord& record) {
    Impl& in = *impl_;
    int first = in.peek_significant();
    if (first < 0) return false;
    in.record_start = in.offset;

    if (in.format == SeqFormat::autodetect)
        in.format = first == '>' ? SeqFormat::fasta : SeqFormat::fastq;

    const char marker = in.format == SeqFormat::fasta ? '>' : '@';
    int c = in.get();
    if (c != marker)
        throw ParseError(std::string("expected '") + marker + "' at record start",
                         in.record_start);

    record.id.clear();
    record.bases.clear();
    record.quality.clear();
    if (!in.read_line(record.id))
        throw ParseError("unexpected end of file in record header", in.record_start);
    // id = text up to first whitespace
    if (auto sp = record.id.find_first_of(" \t"); sp != std::string::npos)
        record.id.resize(sp);
    if (record.id.empty()) throw ParseError("empty record id", in.record_start);

    if (in.format == SeqFormat::fasta) {
        while (true) {
            c = in.get();
            if (c < 0) break;
            if (c == '>') {
                in.unget(c);
                break;
            }
            if (c == '\n' || c == '\r') continue;
            record.bases.push_back(static_cast<char>(c));
            in.read_line(record.bases);
        }
        return true;
    }

    // FASTQ: sequence lines until '+', then quality until it reaches the
    // sequence length.
    while (true) {
        c = in.get();
        if (c < 0)
            throw ParseError("unexpected end of file in sequence", in.record_start);
        if (c == '+') {
            std::string plus_line;
            in.read_line(plus_line);
            break;
        }
        if (c == '\n' || c == '\r') continue;
        record.bases.push_back(static_cast<char>(c));
        in.read_line(record.bases);
    }
    while (record.quality.size() < record.bases.size()) {
        size_t before = record.quality.size();
        if (!in.read_line(record.quality) || record.quality.size() == before)
            throw ParseError("quality shorter than sequence", in.record_start);
    }
    if (record.quality.size() != record.bases.size())
        throw ParseError("quality length " + std::to_string(record.quality.size()) +
                             " does not match sequence length " +
                             std::to_string(record.bases.size()),
                         in.record_start);
    return true;
}

}  // namespace khist
