#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fractalab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated by the caller.
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

class InvalidWordError : public Error {
public:
    using Error::Error;
};

class InvalidWeightsError : public Error {
public:
    using Error::Error;
};

/// A map is not a contraction, or does not send the bounding ball into itself.
class ContractionError : public Error {
public:
    using Error::Error;
};

/// All maps share a fixed point, so the attractor is a single point.
class DegenerateSystemError : public Error {
public:
    using Error::Error;
};

/// The word-enumeration budget would be exceeded. Carries whatever was
/// computed before the budget ran out.
class ResourceError : public Error {
public:
    ResourceError(const std::string& what, int depth_reached, std::vector<double> partial = {})
        : Error(what), depth_reached_(depth_reached), partial_(std::move(partial)) {}

    int depth_reached() const noexcept { return depth_reached_; }
    const std::vector<double>& partial_ladder() const noexcept { return partial_; }

private:
    int depth_reached_;
    std::vector<double> partial_;
};

/// A pressure bracket straddles zero too widely to certify a sign.
class InconclusiveError : public Error {
public:
    InconclusiveError(const std::string& what, std::vector<double> ladder)
        : Error(what), ladder_(std::move(ladder)) {}

    const std::vector<double>& ladder() const noexcept { return ladder_; }

private:
    std::vector<double> ladder_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : Error(what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class InsufficientScalesError : public Error {
public:
    using Error::Error;
};

class ZeroMassError : public Error {
public:
    using Error::Error;
};

}  // namespace fractalab
