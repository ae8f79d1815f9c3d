#include "khist/kmer.hpp"

#include <stdexcept>

namespace khist::kmer {

void encode(std::string_view bases, std::span<uint64_t> out) {
    const uint32_t k = static_cast<uint32_t>(bases.size());
    if (k < 1 || k > kMaxK) throw std::invalid_argument("k-mer length out of range");
    if (out.size() != words_for(k))
        throw std::invalid_argument("encode: wrong output word count");
    for (uint64_t& w : out) w = 0;
    for (char c : bases) {
        int8_t code = base_code(c);
        if (code < 0)
            throw std::invalid_argument(std::string("non-ACGT base '") + c + "'");
        push_base(out, k, static_cast<uint64_t>(code));
    }
}

std::string decode(KmerView view) {
    std::string s(view.k, 'A');
    for (uint32_t i = 0; i < view.k; ++i) {
        uint32_t bit = 2 * (view.k - 1 - i);  // first base in the top bits
        uint64_t code = (view.words[bit / 64] >> (bit % 64)) & 3;
        s[i] = code_base(static_cast<int>(code));
    }
    return s;
}

void reverse_complement(KmerView in, std::span<uint64_t> out) {
    for (uint64_t& w : out) w = 0;
    for (uint32_t i = 0; i < in.k; ++i) {
        uint32_t src = 2 * i;
        uint64_t code = (in.words[src / 64] >> (src % 64)) & 3;
        uint32_t dst = 2 * (in.k - 1 - i);
        out[dst / 64] |= (code ^ 3) << (dst % 64);
    }
}

}  // namespace khist::kmer
