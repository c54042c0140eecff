#pragma once

#include <stdexcept>
#include <string>

namespace mol {

/// Argument outside the mathematical domain of an operation (bad grid
/// parameters, eval point outside the truncated interval, report time
/// outside [0, T], ...).
class DomainError : public std::invalid_argument {
public:
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A banded solve hit a pivot too small to divide by.
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/// The matrix exponential left the representable range.
class OverflowError : public std::overflow_error {
public:
    explicit OverflowError(const std::string& what) : std::overflow_error(what) {}
};

} // namespace mol
