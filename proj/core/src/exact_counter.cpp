#include "khist/exact_counter.hpp"

#include <cstring>

#include "khist/errors.hpp"

namespace khist {

ExactCounter::ExactCounter(uint32_t k, uint64_t max_distinct)
    : k_(k), max_distinct_(max_distinct), small_keys_(k <= 32) {
    if (k < 1 || k > kMaxK) throw ConfigError("k must be in [1, 1024]");
}

std::string ExactCounter::key_bytes(KmerView kmer) const {
    std::string s(kmer.words.size() * sizeof(uint64_t), '\0');
    std::memcpy(s.data(), kmer.words.data(), s.size());
    return s;
}

uint64_t ExactCounter::distinct() const {
    return small_keys_ ? small_.size() : big_.size();
}

void ExactCounter::check_capacity() {
    if (distinct() > max_distinct_)
        throw CapacityError("exact counter exceeded its budget of " +
                            std::to_string(max_distinct_) + " distinct k-mers");
}

void ExactCounter::add(KmerView kmer) {
    ++total_;
    if (small_keys_) {
        ++small_[key64(kmer)];
    } else {
        ++big_[key_bytes(kmer)];
    }
    check_capacity();
}

uint32_t ExactCounter::count(KmerView kmer) const {
    if (small_keys_) {
        auto it = small_.find(key64(kmer));
        return it == small_.end() ? 0 : it->second;
    }
    auto it = big_.find(key_bytes(kmer));
    return it == big_.end() ? 0 : it->second;
}

std::map<uint32_t, uint64_t> ExactCounter::class_sizes() const {
    std::map<uint32_t, uint64_t> classes;
    if (small_keys_) {
        for (const auto& [key, n] : small_) ++classes[n];
    } else {
        for (const auto& [key, n] : big_) ++classes[n];
    }
    return classes;
}

AbundanceHistogram ExactCounter::histogram() const {
    AbundanceHistogram hist;
    hist.source = AbundanceHistogram::Source::exact;
    hist.total_kmers = total_;
    hist.f0 = static_cast<double>(distinct());
    for (const auto& [i, n] : class_sizes())
        hist.counts[i] = static_cast<double>(n);
    return hist;
}

}  // namespace khist
