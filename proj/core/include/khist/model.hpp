#ifndef KHIST_MODEL_HPP
#define KHIST_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "khist/histogram.hpp"

namespace khist {

// A true-k-mer peak in the abundance histogram. Peak of order m sits near
// m * lambda_prime and has height |G_m| / sqrt(2 pi m lambda_prime), where
// |G_m| is the number of distinct k-mers with genome multiplicity m.
struct Peak {
    uint32_t position = 0;  // multiplicity index
    double value = 0.0;     // histogram height at the position
    uint32_t order = 0;     // m
};

struct PeakDetectConfig {
    uint32_t smooth_window = 5;     // moving-average width
    double order_tolerance = 0.25;  // accept order m if within m*tol of m*lambda'
    // Drop candidate peaks shorter than this fraction of the tallest one;
    // suppresses noise bumps just past the error-region valley.
    double min_value_fraction = 0.002;
    std::optional<uint32_t> error_cutoff_hint;
};

struct PeakScan {
    uint32_t error_region_end = 0;  // first local minimum after i = 1
    std::vector<Peak> peaks;        // strictly increasing positions and orders
};

// Locates the erroneous-k-mer / true-k-mer boundary and the true peaks.
// Throws FitError when the histogram has no usable structure (e.g. a single
// decreasing series).
PeakScan detect_peaks(const AbundanceHistogram& hist,
                      const PeakDetectConfig& config = {});

// Model forward direction: expected histogram height of the order-m peak
// given the class size |G_m|.
double inferred_peak_value(double class_size, uint32_t order, double lambda_prime);

// Inversion: |G_m| from an observed peak.
double class_size_from_peak(const Peak& peak, double lambda_prime);

struct HistogramModelFit {
    double lambda_prime = 0.0;  // true-k-mer sampling rate
    double lambda_e = 0.0;      // k-mer error rate
    double lambda = 0.0;        // lambda_prime + lambda_e
    double coverage = 0.0;      // c
    double genome_size = 0.0;   // g
    double n_e_hat = 0.0;       // estimated erroneous k-mer total
    uint32_t error_cutoff = 0;  // multiplicity cutoff used for n_e_hat
    uint32_t read_length = 0;
    uint32_t k = 0;
    uint64_t total_kmers = 0;              // N
    std::vector<Peak> peaks;
    std::map<uint32_t, double> g_m;        // order -> genome positions estimate
    std::map<uint32_t, double> class_size; // order -> |G_m| estimate

    std::string to_json() const;
};

// Fits the generative model: lambda' as the value-weighted mean of
// position/order over the detected peaks, g_m = m * |G_m| from the peak
// inversion, N_e from the error region, lambda_e = lambda' Ne / (N - Ne),
// coverage c = lambda l / (l - k + 1), genome size g = N / lambda.
HistogramModelFit fit_model(const AbundanceHistogram& hist, const PeakScan& scan,
                            uint32_t read_length, uint32_t k);

// Up to three genome-size routes: from the fitted rates, from a known
// coverage, and a supplied reference length; plus pairwise relative gaps.
struct GenomeSizeReport {
    double via_rates = 0.0;
    std::optional<double> via_known_coverage;
    std::optional<double> reference_length;
    std::map<std::string, double> pairwise_rel_diff;

    std::string to_json() const;
};

GenomeSizeReport genome_size_consistency(const HistogramModelFit& fit,
                                         std::optional<double> known_coverage,
                                         std::optional<double> reference_length);

// F0 attributable to erroneous k-mers: sum of f_i over the error region.
double estimate_erroneous_distinct(const AbundanceHistogram& hist,
                                   uint32_t error_region_end);

// F'0 = F0 - F0^e, the estimated count of distinct true k-mers; the k
// maximizing it is the assembly-friendly choice.
double estimate_true_distinct(const AbundanceHistogram& hist,
                              uint32_t error_region_end);

}  // namespace khist

#endif
