#include "khist/sketch.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "khist/errors.hpp"

namespace khist {

LevelAddress locate(uint64_t hash, const SketchParams& params) {
    uint32_t w;
    if (hash == 0) {
        w = params.levels;
    } else {
        w = 1 + static_cast<uint32_t>(std::countr_zero(hash));
        if (w > params.levels) w = params.levels;
    }
    const uint64_t x = w >= 64 ? 0 : hash >> w;
    const uint64_t r = params.counters();
    return LevelAddress{w, (x / params.aux_size) % r,
                        static_cast<uint16_t>(x % params.aux_size)};
}

SketchInstance::SketchInstance(uint64_t seed, const SketchParams& params)
    : seed_(seed), counters_(params.counters()), levels_(params.levels) {}

std::vector<CounterCell>& SketchInstance::touch(uint32_t w) {
    auto& lvl = levels_[w - 1];
    if (lvl.empty()) lvl.resize(counters_);
    return lvl;
}

void SketchInstance::add(const LevelAddress& addr) {
    CounterCell& cell = touch(addr.level)[addr.counter];
    if (cell.dirty()) return;
    if (cell.v == 0) {
        cell.v = 1;
        cell.p = addr.label;
    } else if (cell.p != addr.label) {
        // Zero the label so the dirty state is canonical regardless of the
        // order in which the colliding items arrived.
        cell.v = CounterCell::kDirty;
        cell.p = 0;
    } else if (cell.v < CounterCell::kMaxCount) {
        ++cell.v;
    }
}

void SketchInstance::merge(const SketchInstance& other) {
    for (uint32_t w = 1; w <= level_count(); ++w) {
        const auto* theirs = other.level(w);
        if (!theirs) continue;
        auto& ours = touch(w);
        for (uint64_t c = 0; c < counters_; ++c) {
            CounterCell& a = ours[c];
            const CounterCell& b = (*theirs)[c];
            if (a.dirty() || b.empty()) continue;
            if (b.dirty()) {
                a = b;
            } else if (a.empty()) {
                a = b;
            } else if (a.p != b.p) {
                a.v = CounterCell::kDirty;
                a.p = 0;
            } else {
                int64_t sum = int64_t{a.v} + b.v;
                a.v = sum > CounterCell::kMaxCount ? CounterCell::kMaxCount
                                                   : static_cast<int32_t>(sum);
            }
        }
    }
}

uint64_t SketchInstance::census(uint32_t w, int32_t value) const {
    const auto* lvl = level(w);
    if (!lvl) return value == 0 ? counters_ : 0;
    uint64_t n = 0;
    for (const CounterCell& cell : *lvl) n += (cell.v == value);
    return n;
}

uint64_t SketchInstance::allocated_cells() const {
    uint64_t n = 0;
    for (const auto& lvl : levels_) n += lvl.size();
    return n;
}

AbundanceSketch::AbundanceSketch(SketchParams params) : params_(std::move(params)) {
    params_.validate();
    instances_.reserve(params_.instances);
    for (uint64_t seed : params_.seeds) instances_.emplace_back(seed, params_);
}

void AbundanceSketch::update(std::span<const uint64_t> hashes) {
    for (size_t i = 0; i < instances_.size(); ++i)
        instances_[i].add(locate(hashes[i], params_));
    ++total_updates_;
}

void AbundanceSketch::merge(const AbundanceSketch& other) {
    if (params_ != other.params_)
        throw ConfigError("cannot merge sketches with different parameters or seeds");
    for (size_t i = 0; i < instances_.size(); ++i)
        instances_[i].merge(other.instances_[i]);
    total_updates_ += other.total_updates_;
}

namespace {

// Lower median; instance count is required odd so normally this is the
// middle order statistic.
double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
}

}  // namespace

double AbundanceSketch::estimate_f0() const {
    if (total_updates_ == 0) return 0.0;
    const double r = static_cast<double>(params_.counters());
    const double log_base = std::log(1.0 - 1.0 / r);

    std::vector<double> per_instance;
    per_instance.reserve(instances_.size());
    for (const SketchInstance& inst : instances_) {
        // Rank levels by |zero-fraction - 1/2|; untouched levels (p0 = 1)
        // carry no information and are excluded, as are fully loaded levels
        // (p0 = 0) which fall through to the next-best level.
        struct Cand {
            double dist;
            uint32_t w;
            uint64_t zeros;
        };
        std::vector<Cand> cands;
        for (uint32_t w = 1; w <= params_.levels; ++w) {
            if (!inst.level(w)) continue;
            uint64_t zeros = inst.census(w, 0);
            if (zeros == params_.counters()) continue;
            cands.push_back({std::abs(zeros / r - 0.5), w, zeros});
        }
        std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            return a.dist != b.dist ? a.dist < b.dist : a.w < b.w;
        });
        bool done = false;
        for (const Cand& cand : cands) {
            if (cand.zeros == 0) continue;
            double p0 = cand.zeros / r;
            per_instance.push_back(std::ldexp(std::log(p0) / log_base, cand.w));
            done = true;
            break;
        }
        (void)done;
    }
    if (per_instance.empty())
        throw EstimationError("sketch saturated: no level with surviving zero cells");
    return median(std::move(per_instance));
}

namespace {

// counts[w-1][v] = number of cells at level w holding value v, for
// v in [1, max_value]. One pass over the allocated cells.
using ValueCensus = std::vector<std::vector<uint64_t>>;

ValueCensus value_census(const SketchInstance& inst, uint32_t levels,
                         uint32_t max_value) {
    ValueCensus counts(levels);
    for (uint32_t w = 1; w <= levels; ++w) {
        const auto* lvl = inst.level(w);
        if (!lvl) continue;
        counts[w - 1].assign(max_value + 1, 0);
        for (const CounterCell& cell : *lvl)
            if (cell.v >= 1 && cell.v <= static_cast<int32_t>(max_value))
                ++counts[w - 1][cell.v];
    }
    return counts;
}

// Algorithm core for one multiplicity: pick the level maximizing the count
// of value-i cells (ties to the smallest level), then invert the expected
// collision-free cell count.
double fi_from_census(const ValueCensus& counts, uint32_t multiplicity,
                      double f0_hat, double r) {
    uint32_t best_w = 0;
    uint64_t best_count = 0;
    for (uint32_t w = 1; w <= counts.size(); ++w) {
        if (counts[w - 1].empty()) continue;
        uint64_t n = counts[w - 1][multiplicity];
        if (n > best_count) {
            best_count = n;
            best_w = w;
        }
    }
    if (best_count == 0) return 0.0;
    double p0 = std::pow(1.0 - 1.0 / r, f0_hat / std::ldexp(1.0, best_w));
    double pi = best_count / r;
    return std::ldexp((r - 1.0) * pi / p0, best_w);
}

void check_multiplicity(uint32_t multiplicity) {
    if (multiplicity < 1 ||
        multiplicity > static_cast<uint32_t>(CounterCell::kMaxCount))
        throw EstimationError("unsupported multiplicity " +
                              std::to_string(multiplicity));
}

}  // namespace

double AbundanceSketch::estimate_fi(uint32_t multiplicity, double f0_hat) const {
    check_multiplicity(multiplicity);
    const double r = static_cast<double>(params_.counters());
    std::vector<double> per_instance;
    per_instance.reserve(instances_.size());
    for (const SketchInstance& inst : instances_)
        per_instance.push_back(fi_from_census(
            value_census(inst, params_.levels, multiplicity), multiplicity, f0_hat, r));
    return median(std::move(per_instance));
}

AbundanceHistogram AbundanceSketch::estimate_histogram(uint32_t max_multiplicity) const {
    check_multiplicity(std::max(max_multiplicity, 1u));
    AbundanceHistogram hist;
    hist.source = AbundanceHistogram::Source::sketch;
    hist.total_kmers = total_updates_;
    if (total_updates_ == 0) return hist;
    hist.f0 = estimate_f0();

    const double r = static_cast<double>(params_.counters());
    std::vector<ValueCensus> censuses;
    censuses.reserve(instances_.size());
    for (const SketchInstance& inst : instances_)
        censuses.push_back(value_census(inst, params_.levels, max_multiplicity));

    std::vector<double> per_instance(instances_.size());
    for (uint32_t i = 1; i <= max_multiplicity; ++i) {
        for (size_t l = 0; l < censuses.size(); ++l)
            per_instance[l] = fi_from_census(censuses[l], i, hist.f0, r);
        double fi = median(per_instance);
        if (fi > 0.0) hist.counts[i] = fi;
    }
    return hist;
}

}  // namespace khist
