#include "khist/sketch_io.hpp"

#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include <zlib.h>

#include "khist/errors.hpp"

namespace khist {

namespace {

// Little-endian writer/reader with a running CRC32.
class CrcWriter {
public:
    explicit CrcWriter(std::ostream& out) : out_(out) {}

    void bytes(const void* data, size_t n) {
        out_.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
        crc_ = crc32(crc_, static_cast<const Bytef*>(data), static_cast<uInt>(n));
    }
    template <typename T>
    void le(T value) {
        unsigned char buf[sizeof(T)];
        for (size_t i = 0; i < sizeof(T); ++i)
            buf[i] = static_cast<unsigned char>(
                static_cast<std::make_unsigned_t<T>>(value) >> (8 * i));
        bytes(buf, sizeof(T));
    }
    uint32_t crc() const { return static_cast<uint32_t>(crc_); }
    void trailer() {
        uint32_t c = crc();
        unsigned char buf[4];
        for (size_t i = 0; i < 4; ++i) buf[i] = static_cast<unsigned char>(c >> (8 * i));
        out_.write(reinterpret_cast<const char*>(buf), 4);
    }

private:
    std::ostream& out_;
    uLong crc_ = crc32(0L, Z_NULL, 0);
};

class CrcReader {
public:
    explicit CrcReader(std::istream& in) : in_(in) {}

    void bytes(void* data, size_t n) {
        in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
        if (static_cast<size_t>(in_.gcount()) != n)
            throw FormatError("truncated sketch file");
        crc_ = crc32(crc_, static_cast<const Bytef*>(data), static_cast<uInt>(n));
    }
    template <typename T>
    T le() {
        unsigned char buf[sizeof(T)];
        bytes(buf, sizeof(T));
        std::make_unsigned_t<T> v = 0;
        for (size_t i = 0; i < sizeof(T); ++i)
            v |= static_cast<std::make_unsigned_t<T>>(buf[i]) << (8 * i);
        return static_cast<T>(v);
    }
    void check_trailer() {
        uint32_t expected = crc_;
        unsigned char buf[4];
        in_.read(reinterpret_cast<char*>(buf), 4);
        if (in_.gcount() != 4) throw FormatError("truncated sketch file (missing CRC)");
        uint32_t stored = 0;
        for (size_t i = 0; i < 4; ++i) stored |= uint32_t{buf[i]} << (8 * i);
        if (stored != expected) throw FormatError("sketch file CRC mismatch");
    }

private:
    std::istream& in_;
    uLong crc_ = crc32(0L, Z_NULL, 0);
};

}  // namespace

void SketchCodec::write(const AbundanceSketch& sketch, std::ostream& out) {
    const SketchParams& p = sketch.params();
    CrcWriter w(out);
    w.bytes(kMagic, 4);
    w.le<uint16_t>(kVersion);
    w.le<uint32_t>(p.instances);
    w.le<uint8_t>(static_cast<uint8_t>(p.log2_counters));
    w.le<uint32_t>(p.aux_size);
    w.le<uint8_t>(static_cast<uint8_t>(p.levels));
    w.le<uint16_t>(static_cast<uint16_t>(p.k));
    w.le<uint8_t>(p.canonical ? 1 : 0);
    for (uint64_t seed : p.seeds) w.le<uint64_t>(seed);
    w.le<uint64_t>(sketch.total_updates());

    for (const SketchInstance& inst : sketch.instances()) {
        uint64_t bitmap = 0;
        for (uint32_t lvl = 1; lvl <= p.levels; ++lvl)
            if (inst.level(lvl)) bitmap |= uint64_t{1} << (lvl - 1);
        w.le<uint64_t>(bitmap);
        for (uint32_t lvl = 1; lvl <= p.levels; ++lvl) {
            const auto* cells = inst.level(lvl);
            if (!cells) continue;
            for (const CounterCell& cell : *cells) {
                w.le<int32_t>(cell.v);
                w.le<uint16_t>(cell.p);
            }
        }
    }
    w.trailer();
    if (!out) throw IoError("failed writing sketch stream");
}

AbundanceSketch SketchCodec::read(std::istream& in) {
    CrcReader r(in);
    char magic[4];
    r.bytes(magic, 4);
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw FormatError("not a sketch file (bad magic)");
    uint16_t version = r.le<uint16_t>();
    if (version != kVersion)
        throw FormatError("unsupported sketch format version " + std::to_string(version));

    SketchParams p;
    p.instances = r.le<uint32_t>();
    p.log2_counters = r.le<uint8_t>();
    p.aux_size = r.le<uint32_t>();
    p.levels = r.le<uint8_t>();
    p.k = r.le<uint16_t>();
    p.canonical = r.le<uint8_t>() != 0;
    if (p.instances == 0 || p.instances > 4096)
        throw FormatError("implausible instance count in sketch file");
    p.seeds.resize(p.instances);
    for (uint64_t& seed : p.seeds) seed = r.le<uint64_t>();
    p.validate();

    AbundanceSketch sketch(p);
    sketch.total_updates_ = r.le<uint64_t>();
    for (SketchInstance& inst : sketch.instances_) {
        uint64_t bitmap = r.le<uint64_t>();
        for (uint32_t lvl = 1; lvl <= p.levels; ++lvl) {
            if (!(bitmap & (uint64_t{1} << (lvl - 1)))) continue;
            auto& cells = inst.touch(lvl);
            for (CounterCell& cell : cells) {
                cell.v = r.le<int32_t>();
                cell.p = r.le<uint16_t>();
            }
        }
    }
    r.check_trailer();
    return sketch;
}

void SketchCodec::save(const AbundanceSketch& sketch, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write(sketch, out);
}

AbundanceSketch SketchCodec::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read(in);
}

}  // namespace khist
