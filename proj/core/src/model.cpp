#include "khist/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "khist/errors.hpp"

namespace khist {

namespace {

// Dense histogram vector indexed by multiplicity (index 0 unused).
std::vector<double> densify(const AbundanceHistogram& hist) {
    uint32_t max_i = hist.max_multiplicity();
    std::vector<double> f(max_i + 2, 0.0);
    for (const auto& [i, fi] : hist.counts) f[i] = fi;
    return f;
}

// Centered moving average; the window shrinks near the edges.
std::vector<double> smooth(const std::vector<double>& f, uint32_t window) {
    std::vector<double> s(f.size(), 0.0);
    const int half = static_cast<int>(window) / 2;
    for (int i = 1; i < static_cast<int>(f.size()); ++i) {
        int lo = std::max(1, i - half);
        int hi = std::min(static_cast<int>(f.size()) - 1, i + half);
        double sum = 0.0;
        for (int j = lo; j <= hi; ++j) sum += f[j];
        s[i] = sum / (hi - lo + 1);
    }
    return s;
}

}  // namespace

double inferred_peak_value(double class_size, uint32_t order, double lambda_prime) {
    return class_size /
           std::sqrt(2.0 * std::numbers::pi * order * lambda_prime);
}

double class_size_from_peak(const Peak& peak, double lambda_prime) {
    return peak.value *
           std::sqrt(2.0 * std::numbers::pi * peak.order * lambda_prime);
}

PeakScan detect_peaks(const AbundanceHistogram& hist, const PeakDetectConfig& config) {
    if (hist.counts.empty()) throw FitError("empty histogram");
    std::vector<double> f = densify(hist);
    std::vector<double> s = smooth(f, config.smooth_window);
    const int n = static_cast<int>(f.size()) - 1;

    PeakScan scan;
    if (config.error_cutoff_hint) {
        scan.error_region_end = *config.error_cutoff_hint;
    } else {
        // A series that starts by rising has no erroneous-k-mer spike at all;
        // otherwise the spike decays into the first local minimum.
        int first_move = 0;
        for (int i = 2; i <= n; ++i) {
            if (s[i] != s[i - 1]) {
                first_move = s[i] > s[i - 1] ? 1 : -1;
                break;
            }
        }
        if (first_move > 0) {
            scan.error_region_end = 1;
        } else {
            int cutoff = 0;
            for (int i = 2; i < n; ++i) {
                if (s[i] <= s[i - 1] && s[i] <= s[i + 1]) {
                    cutoff = i;
                    break;
                }
            }
            if (cutoff == 0)
                throw FitError(
                    "no boundary between error and signal regions; histogram "
                    "has no local minimum (increase coverage or supply a "
                    "cutoff)");
            scan.error_region_end = static_cast<uint32_t>(cutoff);
        }
    }

    // Local maxima of the smoothed series beyond the error region; positions
    // refined to the raw-histogram maximum nearby.
    std::vector<Peak> candidates;
    for (int i = static_cast<int>(scan.error_region_end) + 1; i < n; ++i) {
        if (!(s[i] > s[i - 1] && s[i] > s[i + 1])) continue;
        int best = i;
        for (int j = std::max(static_cast<int>(scan.error_region_end) + 1, i - 2);
             j <= std::min(n, i + 2); ++j)
            if (f[j] > f[best]) best = j;
        if (f[best] <= 0) continue;
        if (!candidates.empty() && candidates.back().position ==
                                       static_cast<uint32_t>(best))
            continue;
        candidates.push_back(Peak{static_cast<uint32_t>(best), f[best], 0});
    }
    if (candidates.empty())
        throw FitError("no true-k-mer peak beyond the error region");

    // Residual error bumps just past the valley are local maxima too; keep
    // only candidates within min_value_fraction of the tallest one.
    double tallest = 0.0;
    for (const Peak& cand : candidates) tallest = std::max(tallest, cand.value);
    std::erase_if(candidates, [&](const Peak& cand) {
        return cand.value < config.min_value_fraction * tallest;
    });

    // Assign orders by proximity to multiples of the tallest candidate's
    // position; the order-1 class dominates, so the tallest peak anchors the
    // grid and stray bumps fall between multiples.
    const double first =
        std::max_element(candidates.begin(), candidates.end(),
                         [](const Peak& a, const Peak& b) {
                             return a.value < b.value;
                         })
            ->position;
    std::map<uint32_t, Peak> by_order;
    for (const Peak& cand : candidates) {
        uint32_t m = static_cast<uint32_t>(
            std::llround(cand.position / first));
        if (m < 1) continue;
        if (std::abs(cand.position - m * first) > config.order_tolerance * first)
            continue;
        auto it = by_order.find(m);
        if (it == by_order.end() || cand.value > it->second.value) {
            Peak p = cand;
            p.order = m;
            by_order[m] = p;
        }
    }
    for (const auto& [m, p] : by_order) scan.peaks.push_back(p);
    if (scan.peaks.empty())
        throw FitError("peak candidates do not align with any multiple of the "
                       "first peak");
    return scan;
}

HistogramModelFit fit_model(const AbundanceHistogram& hist, const PeakScan& scan,
                            uint32_t read_length, uint32_t k) {
    if (scan.peaks.empty()) throw FitError("model fit requires at least one peak");
    if (read_length < k) throw FitError("read length must be >= k");

    HistogramModelFit fit;
    fit.read_length = read_length;
    fit.k = k;
    fit.total_kmers = hist.total_kmers;
    fit.error_cutoff = scan.error_region_end;
    fit.peaks = scan.peaks;

    // Value-weighted mean of position/order reduces the integer-grid
    // quantization of the first peak.
    double weight = 0.0, acc = 0.0;
    for (const Peak& p : scan.peaks) {
        acc += p.value * (static_cast<double>(p.position) / p.order);
        weight += p.value;
    }
    fit.lambda_prime = acc / weight;

    for (const Peak& p : scan.peaks) {
        double cls = class_size_from_peak(p, fit.lambda_prime);
        fit.class_size[p.order] = cls;
        fit.g_m[p.order] = p.order * cls;
    }

    double n_e = 0.0;
    for (uint32_t i = 1; i <= fit.error_cutoff; ++i) n_e += i * hist.at(i);
    fit.n_e_hat = n_e;
    const double n_total = static_cast<double>(hist.total_kmers);
    if (n_e >= n_total)
        throw FitError("estimated erroneous k-mer mass exceeds the stream total");
    fit.lambda_e = fit.lambda_prime * n_e / (n_total - n_e);
    fit.lambda = fit.lambda_prime + fit.lambda_e;
    const double windows = static_cast<double>(read_length - k + 1);
    fit.coverage = fit.lambda * read_length / windows;
    fit.genome_size = n_total * read_length / (fit.coverage * windows);
    return fit;
}

GenomeSizeReport genome_size_consistency(const HistogramModelFit& fit,
                                         std::optional<double> known_coverage,
                                         std::optional<double> reference_length) {
    GenomeSizeReport report;
    report.via_rates = fit.genome_size;
    const double windows = static_cast<double>(fit.read_length - fit.k + 1);
    if (known_coverage)
        report.via_known_coverage = static_cast<double>(fit.total_kmers) *
                                    fit.read_length / (*known_coverage * windows);
    report.reference_length = reference_length;

    auto rel = [](double a, double b) { return std::abs(a - b) / b; };
    if (report.via_known_coverage)
        report.pairwise_rel_diff["rates_vs_known_coverage"] =
            rel(report.via_rates, *report.via_known_coverage);
    if (report.reference_length) {
        report.pairwise_rel_diff["rates_vs_reference"] =
            rel(report.via_rates, *report.reference_length);
        if (report.via_known_coverage)
            report.pairwise_rel_diff["known_coverage_vs_reference"] =
                rel(*report.via_known_coverage, *report.reference_length);
    }
    return report;
}

double estimate_erroneous_distinct(const AbundanceHistogram& hist,
                                   uint32_t error_region_end) {
    double f0e = 0.0;
    for (uint32_t i = 1; i <= error_region_end; ++i) f0e += hist.at(i);
    return f0e;
}

double estimate_true_distinct(const AbundanceHistogram& hist,
                              uint32_t error_region_end) {
    return hist.f0 - estimate_erroneous_distinct(hist, error_region_end);
}

std::string HistogramModelFit::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["type"] = "histogram_model_fit";
    j["lambda_prime"] = lambda_prime;
    j["lambda_e"] = lambda_e;
    j["lambda"] = lambda;
    j["coverage"] = coverage;
    j["genome_size"] = genome_size;
    j["n_e_hat"] = n_e_hat;
    j["error_cutoff"] = error_cutoff;
    j["read_length"] = read_length;
    j["k"] = k;
    j["total_kmers"] = total_kmers;
    nlohmann::json peaks_json = nlohmann::json::array();
    for (const Peak& p : peaks)
        peaks_json.push_back(
            {{"position", p.position}, {"value", p.value}, {"order", p.order}});
    j["peaks"] = peaks_json;
    nlohmann::json gm = nlohmann::json::object();
    for (const auto& [m, v] : g_m) gm[std::to_string(m)] = v;
    j["g_m"] = gm;
    nlohmann::json cls = nlohmann::json::object();
    for (const auto& [m, v] : class_size) cls[std::to_string(m)] = v;
    j["class_size"] = cls;
    return j.dump(2);
}

std::string GenomeSizeReport::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["type"] = "genome_size_report";
    j["via_rates"] = via_rates;
    if (via_known_coverage) j["via_known_coverage"] = *via_known_coverage;
    if (reference_length) j["reference_length"] = *reference_length;
    for (const auto& [key, v] : pairwise_rel_diff) j["pairwise_rel_diff"][key] = v;
    return j.dump(2);
}

}  // namespace khist
