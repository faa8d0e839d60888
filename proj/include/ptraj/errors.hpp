#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ptraj {

// Exit-code buckets surfaced by the CLI: usage=1, data/format=2, numeric=3.
enum class ErrorCategory { Usage = 1, Data = 2, Numeric = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, std::string kind, const std::string& message)
        : std::runtime_error(kind + ": " + message),
          category_(category),
          kind_(std::move(kind)) {}

    ErrorCategory category() const { return category_; }
    const std::string& kind() const { return kind_; }

private:
    ErrorCategory category_;
    std::string kind_;
};

// A correlation surface with no usable peak (blank or constant frames).
// Carries the flat response so callers can still threshold on confidence.
class DegenerateSurfaceError : public Error {
public:
    DegenerateSurfaceError(double peak_response, const std::string& message)
        : Error(ErrorCategory::Numeric, "degenerate-surface", message),
          peak_response_(peak_response) {}

    double peak_response() const { return peak_response_; }

private:
    double peak_response_;
};

}  // namespace ptraj
