#ifndef KHIST_COMPARE_HPP
#define KHIST_COMPARE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "khist/histogram.hpp"

namespace khist {

// Relative errors of an estimated histogram against an exact one. Statistics
// whose exact value is zero are excluded (relative error is undefined) and
// counted. Per-f_i errors are additionally grouped by the rarity ratio
// lambda_i = ceil(F0 / f_i).
struct ErrorReport {
    std::optional<double> f0_rel_error;
    std::map<uint32_t, double> fi_rel_error;  // i -> |est - exact| / exact
    std::map<uint64_t, std::vector<double>> lambda_groups;
    uint32_t excluded = 0;

    std::string to_json() const;
};

ErrorReport compare(const AbundanceHistogram& estimated,
                    const AbundanceHistogram& exact, uint32_t max_multiplicity);

// Mean / standard deviation of a set of samples (e.g. relative errors of one
// statistic across trials).
struct ErrorStats {
    double mean = 0.0;
    double stddev = 0.0;
    uint64_t n = 0;
};

ErrorStats summarize(const std::vector<double>& samples);

// Pools the lambda-grouped errors of many trial reports: lambda -> stats.
std::map<uint64_t, ErrorStats> pool_lambda_groups(
    const std::vector<ErrorReport>& reports);

}  // namespace khist

#endif
