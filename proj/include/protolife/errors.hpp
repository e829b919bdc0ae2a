#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace protolife {

// Invalid configuration, schema violation, or unreachable parameter combination.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed term/rule/tile text. `offset` is a byte offset into the input.
struct SyntaxError : std::runtime_error {
    SyntaxError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (offset " + std::to_string(offset) + ")"),
          offset(offset) {}
    std::size_t offset;
};

struct DegenerateRuleset : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PopulationUnderflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidDistribution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyPopulation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownSpecies : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad event-log line. `line` is 1-based.
struct MalformedLog : std::runtime_error {
    MalformedLog(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
          line(line) {}
    std::size_t line;
};

struct MissingInstanceIds : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// I/O or other unrecoverable runtime failure (CLI exit code 2).
struct RuntimeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace protolife
