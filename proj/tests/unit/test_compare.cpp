#include <doctest.h>

#include "khist/compare.hpp"

using namespace khist;

namespace {

AbundanceHistogram exact_hist() {
    AbundanceHistogram h;
    h.f0 = 1000;
    h.counts = {{1, 800}, {2, 150}, {3, 50}};
    h.total_kmers = 1250;
    h.source = AbundanceHistogram::Source::exact;
    return h;
}

}  // namespace

TEST_CASE("relative errors and lambda grouping") {
    AbundanceHistogram est;
    est.f0 = 1050;
    est.counts = {{1, 840}, {2, 150}, {3, 40}};
    est.total_kmers = 1250;
    est.source = AbundanceHistogram::Source::sketch;

    ErrorReport report = compare(est, exact_hist(), 3);
    CHECK(*report.f0_rel_error == doctest::Approx(0.05));
    CHECK(report.fi_rel_error.at(1) == doctest::Approx(0.05));
    CHECK(report.fi_rel_error.at(2) == doctest::Approx(0.0));
    CHECK(report.fi_rel_error.at(3) == doctest::Approx(0.2));
    CHECK(report.excluded == 0);

    // lambda_i = ceil(F0 / f_i): 2 for f1, 7 for f2, 20 for f3.
    CHECK(report.lambda_groups.at(2).front() == doctest::Approx(0.05));
    CHECK(report.lambda_groups.at(7).front() == doctest::Approx(0.0));
    CHECK(report.lambda_groups.at(20).front() == doctest::Approx(0.2));
}

TEST_CASE("zero exact values are excluded, not divided by") {
    AbundanceHistogram est;
    est.f0 = 1000;
    est.counts = {{1, 800}, {4, 10}};
    ErrorReport report = compare(est, exact_hist(), 4);
    CHECK(report.fi_rel_error.count(4) == 0);
    CHECK(report.excluded == 1);
}

TEST_CASE("summarize computes mean and sample stddev") {
    ErrorStats stats = summarize({1.0, 2.0, 3.0, 4.0});
    CHECK(stats.mean == doctest::Approx(2.5));
    CHECK(stats.stddev == doctest::Approx(1.29099).epsilon(1e-4));
    CHECK(stats.n == 4);
    CHECK(summarize({}).n == 0);
}

TEST_CASE("pooling gathers per-lambda samples across reports") {
    AbundanceHistogram exact = exact_hist();
    AbundanceHistogram est1 = exact;
    est1.counts[1] = 840;  // 5% off
    AbundanceHistogram est2 = exact;
    est2.counts[1] = 760;  // 5% off the other way
    auto pooled = pool_lambda_groups(
        {compare(est1, exact, 3), compare(est2, exact, 3)});
    CHECK(pooled.at(2).n == 2);
    CHECK(pooled.at(2).mean == doctest::Approx(0.05));
}
