// khist: streaming k-mer abundance histograms and model-based genome
// statistics.
//
// Subcommands: hist (sketch-based histogram), exact (ground-truth histogram),
// compare (error report), fit (generative-model fit), synth (synthetic
// genome + reads), sketch (build/merge/info/hist on sketch files).

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "khist/compare.hpp"
#include "khist/errors.hpp"
#include "khist/exact_counter.hpp"
#include "khist/ingest.hpp"
#include "khist/model.hpp"
#include "khist/sketch_io.hpp"
#include "khist/synth.hpp"

namespace {

using namespace khist;

constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitEstimation = 3;

uint64_t peak_rss_kb() {
    std::ifstream status("/proc/self/status");
    std::string line;
    while (std::getline(status, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            std::istringstream row(line.substr(6));
            uint64_t kb = 0;
            row >> kb;
            return kb;
        }
    }
    return 0;
}

struct SketchOptions {
    std::vector<std::string> inputs;
    uint32_t k = 21;
    uint32_t log2_counters = 16;
    uint32_t instances = 7;
    uint32_t aux_bits = 16;
    uint32_t threads = 1;
    bool raw = false;
    uint64_t seed = 1;
    uint64_t mem_budget = 0;

    void add_flags(CLI::App& cmd) {
        cmd.add_option("inputs", inputs, "FASTA/FASTQ files, optionally .gz; '-' = stdin")
            ->required();
        cmd.add_option("-k,--kmer-size", k, "k-mer length")->check(CLI::Range(1, 1024));
        cmd.add_option("-r,--log2-counters", log2_counters,
                       "log2 of counters per level (memory knob)")
            ->check(CLI::Range(1, 30));
        cmd.add_option("-t,--instances", instances, "independent sketch instances (odd)");
        cmd.add_option("-u,--aux-bits", aux_bits,
                       "bits of the collision-detection label (u = 2^bits)")
            ->check(CLI::Range(3, 16));
        cmd.add_option("-j,--threads", threads, "ingestion worker threads")
            ->check(CLI::Range(1, 256));
        cmd.add_flag("--raw{true},--canonical{false}", raw,
                     "count k-mers as seen instead of strand-canonically");
        cmd.add_option("--seed", seed, "master seed (expands to instance seeds)");
        cmd.add_option("--mem-budget", mem_budget,
                       "pick the largest log2-counters whose worst-case cell bytes "
                       "fit this budget (overrides --log2-counters)");
    }

    SketchParams params() const {
        SketchParams p;
        p.instances = instances;
        p.log2_counters = log2_counters;
        p.aux_size = 1u << aux_bits;
        p.k = k;
        p.canonical = !raw;
        if (mem_budget > 0) {
            p.log2_counters = 1;
            for (uint32_t lg = 30; lg >= 1; --lg) {
                p.log2_counters = lg;
                if (p.max_cell_bytes() <= mem_budget) break;
            }
        }
        p.finalize(seed);
        return p;
    }
};

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty() || path == "-") return std::cout;
    file.open(path);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    return file;
}

void write_histogram(const AbundanceHistogram& hist, const std::string& format,
                     const std::string& path) {
    std::ofstream file;
    std::ostream& out = open_output(file, path);
    if (format == "json")
        out << hist.to_json() << '\n';
    else
        hist.write_tsv(out);
    if (!out) throw IoError("failed writing histogram output");
}

AbundanceHistogram load_histogram(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    char first = static_cast<char>(in.peek());
    if (first == '{') {
        std::stringstream buffer;
        buffer << in.rdbuf();
        return AbundanceHistogram::from_json(buffer.str());
    }
    return AbundanceHistogram::read_tsv(in);
}

int cmd_hist(const SketchOptions& opt, uint32_t max_count, const std::string& format,
             const std::string& output, const std::string& save_sketch) {
    auto t0 = std::chrono::steady_clock::now();
    IngestResult result = ingest(opt.inputs, opt.params(), opt.threads);
    auto t1 = std::chrono::steady_clock::now();
    AbundanceHistogram hist = result.sketch.estimate_histogram(max_count);
    if (!save_sketch.empty()) SketchCodec::save(result.sketch, save_sketch);
    write_histogram(hist, format, output);

    double secs = std::chrono::duration<double>(t1 - t0).count();
    std::cerr << "reads\t" << result.stats.reads << "\nkmers\t" << result.stats.kmers
              << "\nskipped\t" << result.stats.skipped << "\nF0_hat\t" << hist.f0
              << "\ningest_seconds\t" << secs << "\nkmers_per_second\t"
              << (secs > 0 ? result.stats.kmers / secs : 0.0) << "\npeak_rss_kb\t"
              << peak_rss_kb() << "\n";
    return 0;
}

int cmd_exact(const SketchOptions& opt, const std::string& format,
              const std::string& output) {
    ExactCounter counter(opt.k);
    KmerExtractor extractor(opt.k, !opt.raw);
    StreamStats stats;
    SequenceRecord rec;
    for (const std::string& path : opt.inputs) {
        SequenceReader reader(path);
        while (reader.next(rec))
            extractor.extract(rec, stats, [&](KmerView kmer) { counter.add(kmer); });
    }
    write_histogram(counter.histogram(), format, output);
    std::cerr << "reads\t" << stats.reads << "\nkmers\t" << stats.kmers << "\nF0\t"
              << counter.distinct() << "\n";
    return 0;
}

int cmd_compare(const std::string& estimated_path, const std::string& exact_path,
                uint32_t max_count, const std::string& output) {
    AbundanceHistogram estimated = load_histogram(estimated_path);
    AbundanceHistogram exact = load_histogram(exact_path);
    if (exact.source != AbundanceHistogram::Source::exact)
        throw ConfigError("second histogram must have source=exact");
    ErrorReport report = compare(estimated, exact, max_count);
    std::ofstream file;
    std::ostream& out = open_output(file, output);
    out << report.to_json() << '\n';
    return 0;
}

int cmd_fit(const std::string& hist_path, uint32_t read_length, uint32_t k,
            double known_coverage, double reference_length,
            uint32_t cutoff_override, const std::string& output) {
    AbundanceHistogram hist = load_histogram(hist_path);
    PeakDetectConfig config;
    if (cutoff_override > 0) config.error_cutoff_hint = cutoff_override;
    PeakScan scan = detect_peaks(hist, config);
    HistogramModelFit fit = fit_model(hist, scan, read_length, k);
    GenomeSizeReport sizes = genome_size_consistency(
        fit, known_coverage > 0 ? std::optional(known_coverage) : std::nullopt,
        reference_length > 0 ? std::optional(reference_length) : std::nullopt);

    nlohmann::json j = nlohmann::json::parse(fit.to_json());
    j["genome_size_report"] = nlohmann::json::parse(sizes.to_json());
    j["f0e_hat"] = estimate_erroneous_distinct(hist, fit.error_cutoff);
    j["f0_prime_hat"] = estimate_true_distinct(hist, fit.error_cutoff);
    std::ofstream file;
    std::ostream& out = open_output(file, output);
    out << j.dump(2) << '\n';

    std::cerr << "lambda_prime\t" << fit.lambda_prime << "\nlambda_e\t" << fit.lambda_e
              << "\ncoverage\t" << fit.coverage << "\ngenome_size\t" << fit.genome_size
              << "\n";
    return 0;
}

int cmd_synth(uint64_t length, const std::vector<std::string>& repeat_specs,
              uint32_t k, double coverage, uint32_t read_length, double error_rate,
              uint64_t seed, const std::string& prefix) {
    GenomeSpec gspec;
    gspec.length = length;
    gspec.seed = seed;
    for (const std::string& text : repeat_specs) {
        auto x = text.find('x');
        if (x == std::string::npos)
            throw ConfigError("repeat spec must be LENGTHxCOPIES, got '" + text + "'");
        RepeatBlock block;
        block.length = std::stoull(text.substr(0, x));
        block.copies = static_cast<uint32_t>(std::stoul(text.substr(x + 1)));
        gspec.repeats.push_back(block);
    }
    SynthGenome genome = generate_genome(gspec, k);

    std::ofstream fasta(prefix + ".fasta");
    if (!fasta) throw IoError("cannot write " + prefix + ".fasta");
    fasta << ">synthetic\n";
    for (size_t i = 0; i < genome.sequence.size(); i += 80)
        fasta << genome.sequence.substr(i, 80) << '\n';

    ReadSpec rspec;
    rspec.coverage = coverage;
    rspec.read_length = read_length;
    rspec.error_rate = error_rate;
    rspec.seed = seed + 1;
    std::ofstream fastq(prefix + ".fastq");
    if (!fastq) throw IoError("cannot write " + prefix + ".fastq");
    ReadSetInfo info = generate_reads(genome.sequence, rspec, k, fastq);

    nlohmann::json truth = nlohmann::json::parse(genome.ground_truth_json());
    truth["reads"] = nlohmann::json::parse(info.ground_truth_json());
    std::ofstream sidecar(prefix + ".truth.json");
    if (!sidecar) throw IoError("cannot write " + prefix + ".truth.json");
    sidecar << truth.dump(2) << '\n';

    std::cerr << "genome_length\t" << genome.sequence.size() << "\nreads\t"
              << info.reads << "\nkmers\t" << info.kmers << "\nbase_errors\t"
              << info.base_errors << "\n";
    return 0;
}

int cmd_sketch_build(const SketchOptions& opt, const std::string& output) {
    IngestResult result = ingest(opt.inputs, opt.params(), opt.threads);
    SketchCodec::save(result.sketch, output);
    std::cerr << "reads\t" << result.stats.reads << "\nkmers\t" << result.stats.kmers
              << "\n";
    return 0;
}

int cmd_sketch_merge(const std::vector<std::string>& inputs,
                     const std::string& output) {
    AbundanceSketch merged = SketchCodec::load(inputs.front());
    for (size_t i = 1; i < inputs.size(); ++i)
        merged.merge(SketchCodec::load(inputs[i]));
    SketchCodec::save(merged, output);
    return 0;
}

int cmd_sketch_info(const std::string& path) {
    AbundanceSketch sketch = SketchCodec::load(path);
    const SketchParams& p = sketch.params();
    uint64_t cells = 0;
    for (const SketchInstance& inst : sketch.instances())
        cells += inst.allocated_cells();
    std::cout << "k\t" << p.k << "\ncanonical\t" << (p.canonical ? 1 : 0)
              << "\ninstances\t" << p.instances << "\nlog2_counters\t"
              << p.log2_counters << "\naux_size\t" << p.aux_size << "\nlevels\t"
              << p.levels << "\ntotal_updates\t" << sketch.total_updates()
              << "\nallocated_cells\t" << cells << "\nallocated_bytes\t" << cells * 6
              << "\n";
    return 0;
}

int cmd_sketch_hist(const std::string& path, uint32_t max_count,
                    const std::string& format, const std::string& output) {
    AbundanceSketch sketch = SketchCodec::load(path);
    write_histogram(sketch.estimate_histogram(max_count), format, output);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"approximate k-mer abundance histograms and genome statistics"};
    app.require_subcommand(1);

    SketchOptions hist_opt;
    uint32_t hist_max = 200;
    std::string hist_format = "tsv", hist_out, hist_save;
    CLI::App* hist = app.add_subcommand("hist", "estimate a histogram from reads");
    hist_opt.add_flags(*hist);
    hist->add_option("-m,--max-count", hist_max, "largest multiplicity to estimate");
    hist->add_option("--format", hist_format)->check(CLI::IsMember({"tsv", "json"}));
    hist->add_option("-o,--output", hist_out, "output path (default stdout)");
    hist->add_option("--save-sketch", hist_save, "also save the sketch file");

    SketchOptions exact_opt;
    std::string exact_format = "tsv", exact_out;
    CLI::App* exact = app.add_subcommand("exact", "exact histogram (desk scale)");
    exact_opt.add_flags(*exact);
    exact->add_option("--format", exact_format)->check(CLI::IsMember({"tsv", "json"}));
    exact->add_option("-o,--output", exact_out);

    std::string cmp_est, cmp_exact, cmp_out;
    uint32_t cmp_max = 200;
    CLI::App* cmp = app.add_subcommand("compare", "relative errors vs an exact histogram");
    cmp->add_option("estimated", cmp_est)->required();
    cmp->add_option("exact", cmp_exact)->required();
    cmp->add_option("-m,--max-count", cmp_max);
    cmp->add_option("-o,--output", cmp_out);

    std::string fit_hist, fit_out;
    uint32_t fit_l = 0, fit_k = 0, fit_cutoff = 0;
    double fit_c = 0.0, fit_ref = 0.0;
    CLI::App* fit = app.add_subcommand("fit", "fit the abundance model to a histogram");
    fit->add_option("histogram", fit_hist)->required();
    fit->add_option("-l,--read-length", fit_l)->required();
    fit->add_option("-k,--kmer-size", fit_k)->required();
    fit->add_option("-c,--coverage", fit_c, "known coverage for the second genome-size route");
    fit->add_option("--reference-length", fit_ref, "known genome length, for the report");
    fit->add_option("--cutoff", fit_cutoff, "override the detected error-region cutoff");
    fit->add_option("-o,--output", fit_out);

    uint64_t synth_len = 1000000, synth_seed = 1;
    std::vector<std::string> synth_repeats;
    uint32_t synth_k = 21, synth_l = 100;
    double synth_cov = 30.0, synth_err = 0.0;
    std::string synth_prefix = "synth";
    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic genome and reads");
    synth->add_option("-g,--genome-length", synth_len);
    synth->add_option("--repeat", synth_repeats,
                      "planted repeat block LENGTHxCOPIES (repeatable)");
    synth->add_option("-k,--kmer-size", synth_k, "k used for the ground-truth table");
    synth->add_option("-c,--coverage", synth_cov);
    synth->add_option("-l,--read-length", synth_l);
    synth->add_option("-e,--error-rate", synth_err);
    synth->add_option("--seed", synth_seed);
    synth->add_option("-o,--output-prefix", synth_prefix);

    CLI::App* sketch = app.add_subcommand("sketch", "sketch file operations");
    sketch->require_subcommand(1);
    SketchOptions sb_opt;
    std::string sb_out;
    CLI::App* sb = sketch->add_subcommand("build", "ingest reads into a sketch file");
    sb_opt.add_flags(*sb);
    sb->add_option("-o,--output", sb_out)->required();
    std::vector<std::string> sm_in;
    std::string sm_out;
    CLI::App* sm = sketch->add_subcommand("merge", "merge sketch files");
    sm->add_option("inputs", sm_in)->required()->expected(-2);
    sm->add_option("-o,--output", sm_out)->required();
    std::string si_in;
    CLI::App* si = sketch->add_subcommand("info", "print sketch file metadata");
    si->add_option("input", si_in)->required();
    std::string sh_in, sh_format = "tsv", sh_out;
    uint32_t sh_max = 200;
    CLI::App* sh = sketch->add_subcommand("hist", "estimate a histogram from a sketch file");
    sh->add_option("input", sh_in)->required();
    sh->add_option("-m,--max-count", sh_max);
    sh->add_option("--format", sh_format)->check(CLI::IsMember({"tsv", "json"}));
    sh->add_option("-o,--output", sh_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (hist->parsed())
            return cmd_hist(hist_opt, hist_max, hist_format, hist_out, hist_save);
        if (exact->parsed()) return cmd_exact(exact_opt, exact_format, exact_out);
        if (cmp->parsed()) return cmd_compare(cmp_est, cmp_exact, cmp_max, cmp_out);
        if (fit->parsed())
            return cmd_fit(fit_hist, fit_l, fit_k, fit_c, fit_ref, fit_cutoff, fit_out);
        if (synth->parsed())
            return cmd_synth(synth_len, synth_repeats, synth_k, synth_cov, synth_l,
                             synth_err, synth_seed, synth_prefix);
        if (sb->parsed()) return cmd_sketch_build(sb_opt, sb_out);
        if (sm->parsed()) return cmd_sketch_merge(sm_in, sm_out);
        if (si->parsed()) return cmd_sketch_info(si_in);
        if (sh->parsed()) return cmd_sketch_hist(sh_in, sh_max, sh_format, sh_out);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const EstimationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEstimation;
    } catch (const FitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEstimation;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEstimation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return 0;
}
