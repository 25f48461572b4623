#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtsc {

/// Error raised while parsing or validating a `.ts` file. Carries the kind of
/// violation plus the 1-based line number and the offending token.
class TsFormatError : public std::runtime_error {
public:
    enum class Kind {
        MalformedHeader,
        DimensionCountMismatch,
        RaggedSeries,
        UnknownClassLabel,
        NonNumericValue,
    };

    TsFormatError(Kind kind, std::size_t line, std::string token, const std::string& detail)
        : std::runtime_error(format(kind, line, token, detail)),
          kind_(kind),
          line_(line),
          token_(std::move(token)) {}

    Kind kind() const { return kind_; }
    std::size_t line() const { return line_; }
    const std::string& token() const { return token_; }

    static const char* kind_name(Kind k);

private:
    static std::string format(Kind kind, std::size_t line, const std::string& token,
                              const std::string& detail);

    Kind kind_;
    std::size_t line_;
    std::string token_;
};

/// Incompatible shapes: length/dimension mismatches, over-long shapelets or windows.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Model misuse: predicting with an empty/unfitted model, invalid parameters.
class ModelError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Statistics preconditions: too few pairs, incomplete tables, empty prediction sets.
class StatsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A class cannot satisfy the stratification constraints of a resample.
class ClassTooSmallError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cooperative time-budget expiry; partial work is discarded by the caller.
class TimeoutError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Pre-flight memory estimate exceeded the configured budget.
class ResourceBudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mtsc
