#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace seriation {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand sizes do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An argument lies outside the domain of the operation (NaN, negative width, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// The similarity graph has more than one connected component.
class DisconnectedError : public Error {
public:
    explicit DisconnectedError(std::vector<std::size_t> component_sizes);

    const std::vector<std::size_t>& component_sizes() const noexcept { return sizes_; }

private:
    std::vector<std::size_t> sizes_;
};

/// An iterative method stopped before reaching its tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_residual)
        : Error(what), residual_(last_residual) {}

    double last_residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Malformed input file. `line()` is 1-based; 0 when the problem is not tied to a line.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace seriation
