#pragma once

#include <stdexcept>
#include <string>

namespace event2vec {

/// Malformed input line; carries the 1-based line number.
struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_number(line) {}
    std::size_t line_number;
};

/// A type tag not declared in the schema.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// A link violates the event identifier rule (zero or two anchor endpoints).
struct RuleViolation : std::runtime_error {
    explicit RuleViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Proximity requested for two event-free objects.
struct UndefinedProximity : std::runtime_error {
    explicit UndefinedProximity(const std::string& what) : std::runtime_error(what) {}
};

/// Vector/matrix dimensions inconsistent with the model.
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite loss during training; carries epoch and batch indices.
struct DivergenceError : std::runtime_error {
    DivergenceError(int epoch_, int batch_)
        : std::runtime_error("non-finite loss at epoch " + std::to_string(epoch_) +
                             ", batch " + std::to_string(batch_)),
          epoch(epoch_), batch(batch_) {}
    int epoch;
    int batch;
};

/// Evaluation cannot produce a defined metric (empty score list, zero-norm
/// vector, degenerate label set, exhausted negative sampling).
struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace event2vec
