#pragma once

#include <stdexcept>
#include <string>

namespace randgrasp::core {

struct IoFailure : std::runtime_error {
    explicit IoFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// Corrupt/truncated binary artifact (dataset, checkpoint) or malformed text config.
struct CorruptData : std::runtime_error {
    explicit CorruptData(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvariantViolation : std::logic_error {
    explicit InvariantViolation(const std::string& msg) : std::logic_error(msg) {}
};

struct ShapeMismatch : std::invalid_argument {
    explicit ShapeMismatch(const std::string& msg) : std::invalid_argument(msg) {}
};

// Data generation could not keep up a usable success rate.
struct GenerationStalled : std::runtime_error {
    explicit GenerationStalled(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnknownSwitch : std::invalid_argument {
    explicit UnknownSwitch(const std::string& msg) : std::invalid_argument(msg) {}
};

}  // namespace randgrasp::core
