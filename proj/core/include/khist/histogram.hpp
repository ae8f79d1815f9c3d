#ifndef KHIST_HISTOGRAM_HPP
#define KHIST_HISTOGRAM_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

namespace khist {

// Abundance histogram: F0 plus the map multiplicity -> f_i. Either exact
// (integral values, partition identities hold) or estimated from a sketch.
struct AbundanceHistogram {
    enum class Source { sketch, exact };

    double f0 = 0.0;
    std::map<uint32_t, double> counts;  // i >= 1 -> f_i
    uint64_t total_kmers = 0;           // N, exact in both modes
    Source source = Source::exact;

    double at(uint32_t i) const {
        auto it = counts.find(i);
        return it == counts.end() ? 0.0 : it->second;
    }
    uint32_t max_multiplicity() const {
        return counts.empty() ? 0 : counts.rbegin()->first;
    }

    // TSV layout: '#F0<TAB>value' header (plus a '#N' line carrying the total
    // k-mer count), then rows 'i<TAB>f_i'.
    void write_tsv(std::ostream& out) const;
    static AbundanceHistogram read_tsv(std::istream& in);

    std::string to_json() const;
    static AbundanceHistogram from_json(const std::string& text);
};

}  // namespace khist

#endif
