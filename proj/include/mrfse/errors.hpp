#pragma once

#include <stdexcept>
#include <string>

namespace mrfse {

// Error categories map onto CLI exit codes: argument errors exit with 2,
// data/format errors with 3, capacity errors with 4.

class ArgumentError : public std::invalid_argument {
public:
    explicit ArgumentError(const std::string& msg) : std::invalid_argument(msg) {}
};

class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Requesting a conditional probability for a configuration with zero count.
class UndefinedConditionalError : public ArgumentError {
public:
    explicit UndefinedConditionalError(const std::string& msg) : ArgumentError(msg) {}
};

}  // namespace mrfse
