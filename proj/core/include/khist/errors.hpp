#ifndef KHIST_ERRORS_HPP
#define KHIST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace khist {

// Invalid sketch parameters or generator specs.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed FASTA/FASTQ input; carries the byte offset of the offending record.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, uint64_t offset)
        : std::runtime_error(msg + " (at byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    uint64_t offset() const { return offset_; }

private:
    uint64_t offset_;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Sketch file decoding failures: bad magic, version, truncation, checksum.
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Estimation cannot produce a value (saturated sketch, unsupported multiplicity).
class EstimationError : public std::runtime_error {
public:
    explicit EstimationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact counter exceeded its configured memory budget.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Model fitting failures (no usable peaks, inconsistent totals).
class FitError : public std::runtime_error {
public:
    explicit FitError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace khist

#endif
