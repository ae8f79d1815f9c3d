#ifndef KHIST_KMER_HPP
#define KHIST_KMER_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace khist {

inline constexpr uint32_t kMaxK = 1024;
inline constexpr uint32_t kMaxKmerWords = (kMaxK + 31) / 32;

// A k-mer is packed 2 bits per base (A=00, C=01, G=10, T=11) into a 2k-bit
// integer whose most significant pair is the first base, stored across 64-bit
// words least-significant word first. Unused high bits are zero, so equal
// k-mers are bit-equal and lexicographic order equals numeric order.
struct KmerView {
    uint32_t k = 0;
    std::span<const uint64_t> words;
};

namespace kmer {

inline constexpr std::array<int8_t, 256> kBaseCode = [] {
    std::array<int8_t, 256> t{};
    for (auto& c : t) c = -1;
    t['A'] = t['a'] = 0;
    t['C'] = t['c'] = 1;
    t['G'] = t['g'] = 2;
    t['T'] = t['t'] = 3;
    return t;
}();

inline int8_t base_code(char c) { return kBaseCode[static_cast<unsigned char>(c)]; }
inline char code_base(int code) { return "ACGT"[code & 3]; }

inline uint32_t words_for(uint32_t k) { return (k + 31) / 32; }

// Number of occupied bits in the top word (64 when the word is full).
inline uint32_t top_bits(uint32_t k) {
    uint32_t b = (2 * k) % 64;
    return b == 0 ? 64 : b;
}
inline uint64_t top_mask(uint32_t k) {
    uint32_t b = top_bits(k);
    return b == 64 ? ~uint64_t{0} : (uint64_t{1} << b) - 1;
}

// Shifts the packed value left by two bits and appends `code` as the new
// last base, masking overflow past 2k bits.
inline void push_base(std::span<uint64_t> words, uint32_t k, uint64_t code) {
    for (size_t w = words.size(); w-- > 1;)
        words[w] = (words[w] << 2) | (words[w - 1] >> 62);
    words[0] = (words[0] << 2) | code;
    words.back() &= top_mask(k);
}

// Shifts the packed value right by two bits and prepends the complement of
// `code` as the new first base; used to maintain the reverse complement
// incrementally alongside push_base.
inline void push_base_rc(std::span<uint64_t> words, uint32_t k, uint64_t code) {
    for (size_t w = 0; w + 1 < words.size(); ++w)
        words[w] = (words[w] >> 2) | (words[w + 1] << 62);
    words.back() >>= 2;
    uint32_t bit = 2 * (k - 1);
    words[bit / 64] |= (code ^ 3) << (bit % 64);
}

// Throws std::invalid_argument on non-ACGT input. `out` must hold
// words_for(bases.size()) zero-initialized words.
void encode(std::string_view bases, std::span<uint64_t> out);

std::string decode(KmerView view);

void reverse_complement(KmerView in, std::span<uint64_t> out);

// Numeric comparison, most significant word first.
inline int compare(std::span<const uint64_t> a, std::span<const uint64_t> b) {
    for (size_t w = a.size(); w-- > 0;) {
        if (a[w] != b[w]) return a[w] < b[w] ? -1 : 1;
    }
    return 0;
}

// The lexicographic minimum of a k-mer and its reverse complement.
inline std::span<const uint64_t> canonical(std::span<const uint64_t> fwd,
                                           std::span<const uint64_t> rc) {
    return compare(fwd, rc) <= 0 ? fwd : rc;
}

}  // namespace kmer
}  // namespace khist

#endif
