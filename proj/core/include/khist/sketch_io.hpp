#ifndef KHIST_SKETCH_IO_HPP
#define KHIST_SKETCH_IO_HPP

#include <iosfwd>
#include <string>

#include "khist/sketch.hpp"

namespace khist {

// Sketch file format (all integers little-endian):
//   magic "KHSK", version u16
//   t u32, log2r u8, u u32, M u8, k u16, canonical u8
//   seeds t x u64
//   total_updates u64
//   per instance: level-presence bitmap u64 (bit w-1 = level w allocated),
//                 then each present level in ascending w as r cells of
//                 6 bytes (v i32, p u16)
//   CRC32 u32 over everything before the trailer
class SketchCodec {
public:
    static constexpr char kMagic[4] = {'K', 'H', 'S', 'K'};
    static constexpr uint16_t kVersion = 1;

    static void write(const AbundanceSketch& sketch, std::ostream& out);
    static AbundanceSketch read(std::istream& in);

    static void save(const AbundanceSketch& sketch, const std::string& path);
    static AbundanceSketch load(const std::string& path);
};

}  // namespace khist

#endif
