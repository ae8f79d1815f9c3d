#include "khist/histogram.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "khist/errors.hpp"

namespace khist {

namespace {

// Exact counts print as integers; sketch estimates keep full precision.
void print_value(std::ostream& out, double v, AbundanceHistogram::Source source) {
    if (source == AbundanceHistogram::Source::exact) {
        out << static_cast<uint64_t>(std::llround(v));
    } else {
        char buf[32];
        snprintf(buf, sizeof(buf), "%.6f", v);
        out << buf;
    }
}

}  // namespace

void AbundanceHistogram::write_tsv(std::ostream& out) const {
    out << "#F0\t";
    print_value(out, f0, source);
    out << "\n#N\t" << total_kmers << "\n";
    out << "#source\t" << (source == Source::exact ? "exact" : "sketch") << "\n";
    for (const auto& [i, fi] : counts) {
        out << i << '\t';
        print_value(out, fi, source);
        out << '\n';
    }
}

AbundanceHistogram AbundanceHistogram::read_tsv(std::istream& in) {
    AbundanceHistogram hist;
    std::string line;
    uint64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream row(line);
        if (line[0] == '#') {
            std::string key, value;
            row >> key >> value;
            try {
                if (key == "#F0") hist.f0 = std::stod(value);
                else if (key == "#N") hist.total_kmers = std::stoull(value);
                else if (key == "#source")
                    hist.source = value == "sketch" ? Source::sketch : Source::exact;
            } catch (const std::exception&) {
                throw FormatError("bad histogram header at line " +
                                  std::to_string(lineno) + ": '" + line + "'");
            }
            continue;
        }
        uint32_t i;
        double fi;
        if (!(row >> i >> fi))
            throw FormatError("bad histogram row at line " + std::to_string(lineno) +
                              ": '" + line + "'");
        hist.counts[i] = fi;
    }
    return hist;
}

std::string AbundanceHistogram::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["type"] = "abundance_histogram";
    j["source"] = source == Source::exact ? "exact" : "sketch";
    j["f0"] = f0;
    j["total_kmers"] = total_kmers;
    nlohmann::json c = nlohmann::json::object();
    for (const auto& [i, fi] : counts) c[std::to_string(i)] = fi;
    j["counts"] = c;
    return j.dump(2);
}

AbundanceHistogram AbundanceHistogram::from_json(const std::string& text) {
    try {
        nlohmann::json j = nlohmann::json::parse(text);
        AbundanceHistogram hist;
        hist.f0 = j.at("f0").get<double>();
        hist.total_kmers = j.at("total_kmers").get<uint64_t>();
        hist.source = j.at("source").get<std::string>() == "sketch"
                          ? Source::sketch
                          : Source::exact;
        for (const auto& [key, fi] : j.at("counts").items())
            hist.counts[static_cast<uint32_t>(std::stoul(key))] = fi.get<double>();
        return hist;
    } catch (const FormatError&) {
        throw;
    } catch (const std::exception& e) {
        throw FormatError(std::string("bad histogram JSON: ") + e.what());
    }
}

}  // namespace khist
