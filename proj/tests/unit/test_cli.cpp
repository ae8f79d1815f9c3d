#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/stat.h>
#include <sys/wait.h>

#include <json.hpp>

#include "khist/histogram.hpp"

namespace {

const std::string kDir = "/tmp/khist_cli_test";

int run(const std::string& args) {
    std::string cmd = "cd " + kDir + " && " KHIST_CLI_PATH " " + args;
    if (args.find('>') == std::string::npos) cmd += " >>cli.out";
    cmd += " 2>>cli.err";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& name) {
    std::ifstream in(kDir + "/" + name);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool exists(const std::string& name) {
    struct stat st{};
    return stat((kDir + "/" + name).c_str(), &st) == 0;
}

struct Setup {
    Setup() {
        std::system(("rm -rf " + kDir + " && mkdir -p " + kDir).c_str());
    }
} setup;

}  // namespace

TEST_CASE("full pipeline: synth, exact, hist, compare, fit") {
    REQUIRE(run("synth -g 150000 --repeat 1500x2 -k 15 -c 35 -l 100 -e 0.001 "
                "--seed 3 -o data") == 0);
    REQUIRE(exists("data.fasta"));
    REQUIRE(exists("data.fastq"));
    REQUIRE(exists("data.truth.json"));

    REQUIRE(run("exact data.fastq -k 15 --raw -o exact.tsv") == 0);
    REQUIRE(run("hist data.fastq -k 15 --raw -r 16 --seed 5 -m 120 "
                "-o est.tsv --save-sketch data.sk") == 0);

    std::istringstream est_in(slurp("est.tsv"));
    auto est = khist::AbundanceHistogram::read_tsv(est_in);
    std::istringstream exact_in(slurp("exact.tsv"));
    auto exact = khist::AbundanceHistogram::read_tsv(exact_in);
    CHECK(est.source == khist::AbundanceHistogram::Source::sketch);
    CHECK(exact.source == khist::AbundanceHistogram::Source::exact);
    CHECK(std::abs(est.f0 - exact.f0) / exact.f0 < 0.05);

    REQUIRE(run("compare est.tsv exact.tsv -m 60 -o cmp.json") == 0);
    auto cmp = nlohmann::json::parse(slurp("cmp.json"));
    CHECK(cmp["f0_rel_error"].get<double>() < 0.05);

    REQUIRE(run("fit exact.tsv -l 100 -k 15 --reference-length 150000 "
                "-o fit.json") == 0);
    auto fit = nlohmann::json::parse(slurp("fit.json"));
    // lambda' = c (l - k + 1) / l = 35 * 86 / 100 = 30.1 up to grid rounding.
    CHECK(fit["lambda_prime"].get<double>() == doctest::Approx(30.1).epsilon(0.05));
    CHECK(fit["genome_size_report"]["pairwise_rel_diff"]["rates_vs_reference"]
              .get<double>() < 0.05);
}

TEST_CASE("sketch subcommands: build, info, merge, hist") {
    REQUIRE(run("sketch build data.fastq -k 15 --raw -r 14 --seed 7 -o a.sk") == 0);
    REQUIRE(run("sketch info a.sk > info.txt") == 0);
    std::string info = slurp("info.txt");
    CHECK(info.find("k\t15") != std::string::npos);
    CHECK(info.find("log2_counters\t14") != std::string::npos);

    REQUIRE(run("sketch merge a.sk a.sk -o double.sk") == 0);
    REQUIRE(run("sketch hist double.sk -m 10 -o double.tsv") == 0);
    std::istringstream in(slurp("double.tsv"));
    auto doubled = khist::AbundanceHistogram::read_tsv(in);
    CHECK(doubled.total_kmers > 0);
}

TEST_CASE("json output format") {
    REQUIRE(run("hist data.fastq -k 15 --raw -r 14 --format json -o est.json") == 0);
    auto j = nlohmann::json::parse(slurp("est.json"));
    CHECK(j["f0"].get<double>() > 0);
}

TEST_CASE("gzip input") {
    REQUIRE(std::system(("gzip -kf " + kDir + "/data.fastq").c_str()) == 0);
    REQUIRE(run("exact data.fastq.gz -k 15 --raw -o exact_gz.tsv") == 0);
    CHECK(slurp("exact_gz.tsv") == slurp("exact.tsv"));
}

TEST_CASE("exit codes: usage 1, I/O 2, estimation 3") {
    CHECK(run("definitely-not-a-command") == 1);
    CHECK(run("hist data.fastq -k 15 -t 4") == 1);       // even instance count
    CHECK(run("hist missing.fastq -k 15") == 2);         // unreadable input
    CHECK(run("sketch info data.fasta") == 2);           // not a sketch file
    CHECK(run("fit exact.tsv -l 10 -k 15") == 3);        // read length < k
    CHECK(run("--help") == 0);
}
