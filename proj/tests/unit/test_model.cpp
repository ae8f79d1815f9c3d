#include <doctest.h>

#include <cmath>
#include <random>

#include "khist/errors.hpp"
#include "khist/model.hpp"

using namespace khist;

namespace {

double poisson_pmf(uint32_t i, double lambda) {
    return std::exp(i * std::log(lambda) - lambda - std::lgamma(i + 1.0));
}

// Ideal histogram of a Poisson mixture: classes of sizes cls[m] sampled at
// rate m * lambda, plus an error spike at multiplicity 1.
AbundanceHistogram mixture_hist(const std::map<uint32_t, double>& cls,
                                double lambda, double error_f1) {
    AbundanceHistogram h;
    h.source = AbundanceHistogram::Source::exact;
    for (uint32_t i = 1; i <= 400; ++i) {
        double fi = 0;
        for (const auto& [m, size] : cls) fi += size * poisson_pmf(i, m * lambda);
        if (i == 1) fi += error_f1;
        if (fi > 1e-9) h.counts[i] = fi;
    }
    double n = 0;
    for (const auto& [i, fi] : h.counts) {
        h.f0 += fi;
        n += i * fi;
    }
    h.total_kmers = static_cast<uint64_t>(std::llround(n));
    return h;
}

}  // namespace

TEST_CASE("peak value formula inverts exactly") {
    std::mt19937_64 rng(51);
    for (int rep = 0; rep < 1000; ++rep) {
        double cls = 1.0 + static_cast<double>(rng() % 10000000);
        uint32_t m = 1 + rng() % 5;
        double lp = 1.0 + (rng() % 1000) / 10.0;
        double value = inferred_peak_value(cls, m, lp);
        Peak p{0, value, m};
        CHECK(class_size_from_peak(p, lp) == doctest::Approx(cls).epsilon(1e-9));
    }
}

TEST_CASE("peak detection on a clean Poisson mixture") {
    AbundanceHistogram h =
        mixture_hist({{1, 1000000.0}, {2, 40000.0}, {3, 15000.0}}, 30.0, 2000000.0);
    PeakScan scan = detect_peaks(h);
    REQUIRE(scan.peaks.size() == 3);
    CHECK(scan.peaks[0].order == 1);
    CHECK(std::abs(static_cast<int>(scan.peaks[0].position) - 30) <= 1);
    CHECK(scan.peaks[1].order == 2);
    CHECK(std::abs(static_cast<int>(scan.peaks[1].position) - 60) <= 1);
    CHECK(scan.peaks[2].order == 3);
    CHECK(std::abs(static_cast<int>(scan.peaks[2].position) - 90) <= 1);
    CHECK(scan.error_region_end < 15);
}

TEST_CASE("model fit recovers the mixture parameters") {
    const double lambda = 30.0;
    std::map<uint32_t, double> cls{{1, 1000000.0}, {2, 40000.0}, {3, 15000.0}};
    AbundanceHistogram h = mixture_hist(cls, lambda, 0.0);
    PeakScan scan = detect_peaks(h);
    HistogramModelFit fit = fit_model(h, scan, 100, 21);

    CHECK(fit.lambda_prime == doctest::Approx(lambda).epsilon(0.02));
    for (const auto& [m, size] : cls)
        CHECK(fit.class_size.at(m) == doctest::Approx(size).epsilon(0.05));
    // Peak-of-order-m contributes m * |G_m| genome positions.
    CHECK(fit.g_m.at(2) == doctest::Approx(2 * cls.at(2)).epsilon(0.05));

    // No error spike: lambda_e is negligible and the rate chain closes,
    // lambda * g == N with c = lambda l / (l - k + 1), g = N l / (c (l-k+1)).
    CHECK(fit.lambda_e < 0.05);
    double n = static_cast<double>(fit.total_kmers);
    CHECK(fit.lambda * fit.genome_size == doctest::Approx(n).epsilon(1e-6));
    CHECK(fit.coverage ==
          doctest::Approx(fit.lambda * 100.0 / (100 - 21 + 1)).epsilon(1e-9));
}

TEST_CASE("error spike raises lambda_e and the erroneous-distinct estimate") {
    std::map<uint32_t, double> cls{{1, 500000.0}};
    AbundanceHistogram clean = mixture_hist(cls, 25.0, 0.0);
    AbundanceHistogram noisy = mixture_hist(cls, 25.0, 1000000.0);
    auto fit_of = [](const AbundanceHistogram& h) {
        return fit_model(h, detect_peaks(h), 100, 21);
    };
    HistogramModelFit clean_fit = fit_of(clean);
    HistogramModelFit noisy_fit = fit_of(noisy);
    CHECK(noisy_fit.lambda_e > clean_fit.lambda_e + 0.01);
    CHECK(estimate_erroneous_distinct(noisy, noisy_fit.error_cutoff) >
          900000.0);
    CHECK(estimate_true_distinct(noisy, noisy_fit.error_cutoff) ==
          doctest::Approx(noisy.f0 - estimate_erroneous_distinct(
                                         noisy, noisy_fit.error_cutoff)));
    // The erroneous mass grows monotonically with the cutoff.
    for (uint32_t c = 1; c < 10; ++c)
        CHECK(estimate_erroneous_distinct(noisy, c) <=
              estimate_erroneous_distinct(noisy, c + 1));
}

TEST_CASE("structureless histograms are rejected") {
    AbundanceHistogram geometric;
    geometric.source = AbundanceHistogram::Source::exact;
    for (uint32_t i = 1; i <= 60; ++i)
        geometric.counts[i] = 1e6 * std::pow(0.5, i);
    geometric.f0 = 2e6;
    geometric.total_kmers = 4000000;
    CHECK_THROWS_AS(detect_peaks(geometric), FitError);
    CHECK_THROWS_AS(detect_peaks(AbundanceHistogram{}), FitError);
}

TEST_CASE("cutoff override is honored") {
    AbundanceHistogram h = mixture_hist({{1, 100000.0}}, 20.0, 300000.0);
    PeakDetectConfig config;
    config.error_cutoff_hint = 9;
    CHECK(detect_peaks(h, config).error_region_end == 9);
}

TEST_CASE("read length below k is rejected") {
    AbundanceHistogram h = mixture_hist({{1, 100000.0}}, 20.0, 0.0);
    CHECK_THROWS_AS(fit_model(h, detect_peaks(h), 20, 21), FitError);
}

TEST_CASE("genome size consistency report") {
    AbundanceHistogram h = mixture_hist({{1, 1000000.0}}, 30.0, 0.0);
    HistogramModelFit fit = fit_model(h, detect_peaks(h), 100, 21);
    double true_c = fit.coverage;
    GenomeSizeReport report =
        genome_size_consistency(fit, true_c, fit.genome_size);
    CHECK(*report.via_known_coverage == doctest::Approx(fit.genome_size));
    CHECK(report.pairwise_rel_diff.at("rates_vs_known_coverage") ==
          doctest::Approx(0.0).epsilon(1e-9));
    CHECK(report.pairwise_rel_diff.at("rates_vs_reference") ==
          doctest::Approx(0.0).epsilon(1e-9));
}
