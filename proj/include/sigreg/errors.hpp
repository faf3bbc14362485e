#pragma once

#include <stdexcept>
#include <string>

namespace sigreg {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Argument inside the domain but outside the documented working range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Malformed caller input: unsorted grids, mismatched lengths, bad config.
class InputError : public Error {
public:
    using Error::Error;
};

/// A series hit its term cap before the stopping rule was met.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, double partial_sum)
        : Error(what), partial_sum_(partial_sum) {}
    double partial_sum() const noexcept { return partial_sum_; }

private:
    double partial_sum_;
};

/// A ratio denominator fell below its floor at abscissa `x`.
class DegeneracyError : public Error {
public:
    DegeneracyError(const std::string& what, double x) : Error(what), x_(x) {}
    double x() const noexcept { return x_; }

private:
    double x_;
};

/// Adaptive quadrature failed to reach its tolerance.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double estimate)
        : Error(what), estimate_(estimate) {}
    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

}  // namespace sigreg
