#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cartanflat {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnknownIdentifier : public Error {
public:
    explicit UnknownIdentifier(std::string name)
        : Error("unknown identifier '" + name + "'"), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// Raised by pointwise evaluation (log of non-positive, sqrt of negative,
/// division by zero, overflow). Evaluation never returns NaN.
class DomainError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// The metric (or a derived volume form) degenerates at a point.
class SingularMetric : public Error {
public:
    SingularMetric(const std::string& what, std::vector<double> point);
    const std::vector<double>& point() const noexcept { return point_; }

private:
    std::vector<double> point_;
};

class StepError : public Error {
public:
    using Error::Error;
};

class NonClosedLoop : public Error {
public:
    using Error::Error;
};

}  // namespace cartanflat
