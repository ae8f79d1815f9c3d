#ifndef KHIST_EXACT_COUNTER_HPP
#define KHIST_EXACT_COUNTER_HPP

#include <cstdint>
#include <string>
#include <unordered_map>

#include "khist/histogram.hpp"
#include "khist/kmer.hpp"

namespace khist {

// Ground-truth in-memory k-mer counter for desk-scale validation. Single
// threaded; throws CapacityError instead of approximating when the table
// outgrows the configured budget.
class ExactCounter {
public:
    explicit ExactCounter(uint32_t k, uint64_t max_distinct = 1'000'000'000);

    uint32_t k() const { return k_; }
    uint64_t total() const { return total_; }      // N
    uint64_t distinct() const;                     // exact F0

    void add(KmerView kmer);
    uint32_t count(KmerView kmer) const;  // 0 when absent

    // counts[i] = number of distinct k-mers with multiplicity exactly i.
    AbundanceHistogram histogram() const;

    // multiplicity -> number of distinct k-mers with that multiplicity.
    std::map<uint32_t, uint64_t> class_sizes() const;

private:
    uint64_t key64(KmerView kmer) const { return kmer.words[0]; }
    std::string key_bytes(KmerView kmer) const;
    void check_capacity();

    uint32_t k_;
    uint64_t max_distinct_;
    uint64_t total_ = 0;
    bool small_keys_;  // k <= 32: single-word keys
    std::unordered_map<uint64_t, uint32_t> small_;
    std::unordered_map<std::string, uint32_t> big_;
};

}  // namespace khist

#endif
