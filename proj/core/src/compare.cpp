#include "khist/compare.hpp"

#include <cmath>

#include <json.hpp>

namespace khist {

ErrorReport compare(const AbundanceHistogram& estimated,
                    const AbundanceHistogram& exact, uint32_t max_multiplicity) {
    ErrorReport report;
    if (exact.f0 > 0)
        report.f0_rel_error = std::abs(estimated.f0 - exact.f0) / exact.f0;
    else
        ++report.excluded;

    for (uint32_t i = 1; i <= max_multiplicity; ++i) {
        double truth = exact.at(i);
        if (truth <= 0) {
            ++report.excluded;
            continue;
        }
        double err = std::abs(estimated.at(i) - truth) / truth;
        report.fi_rel_error[i] = err;
        uint64_t lambda = static_cast<uint64_t>(std::ceil(exact.f0 / truth));
        report.lambda_groups[lambda].push_back(err);
    }
    return report;
}

ErrorStats summarize(const std::vector<double>& samples) {
    ErrorStats s;
    s.n = samples.size();
    if (s.n == 0) return s;
    double sum = 0.0;
    for (double v : samples) sum += v;
    s.mean = sum / static_cast<double>(s.n);
    double sq = 0.0;
    for (double v : samples) sq += (v - s.mean) * (v - s.mean);
    s.stddev = s.n > 1 ? std::sqrt(sq / static_cast<double>(s.n - 1)) : 0.0;
    return s;
}

std::map<uint64_t, ErrorStats> pool_lambda_groups(
    const std::vector<ErrorReport>& reports) {
    std::map<uint64_t, std::vector<double>> pooled;
    for (const ErrorReport& rep : reports)
        for (const auto& [lambda, errs] : rep.lambda_groups)
            pooled[lambda].insert(pooled[lambda].end(), errs.begin(), errs.end());
    std::map<uint64_t, ErrorStats> out;
    for (const auto& [lambda, errs] : pooled) out[lambda] = summarize(errs);
    return out;
}

std::string ErrorReport::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["type"] = "error_report";
    if (f0_rel_error) j["f0_rel_error"] = *f0_rel_error;
    nlohmann::json fi = nlohmann::json::object();
    for (const auto& [i, err] : fi_rel_error) fi[std::to_string(i)] = err;
    j["fi_rel_error"] = fi;
    nlohmann::json groups = nlohmann::json::object();
    for (const auto& [lambda, errs] : lambda_groups) {
        ErrorStats s = summarize(errs);
        groups[std::to_string(lambda)] = {
            {"mean", s.mean}, {"stddev", s.stddev}, {"n", s.n}};
    }
    j["lambda_groups"] = groups;
    j["excluded_zero_statistics"] = excluded;
    return j.dump(2);
}

}  // namespace khist
