#pragma once

#include <stdexcept>
#include <string>

namespace incilab {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A documented precondition was not met (e.g. f(p) != 0 for a directional system).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A linear system had an unexpected solution-space dimension.
class DegeneracyError : public Error {
public:
    DegeneracyError(const std::string& what, std::size_t dimension)
        : Error(what), dimension_(dimension) {}
    std::size_t dimension() const noexcept { return dimension_; }

private:
    std::size_t dimension_;
};

// Bisector search ran out of candidates.
class BudgetError : public Error {
public:
    BudgetError(const std::string& what, double best_slack)
        : Error(what), best_slack_(best_slack) {}
    double best_slack() const noexcept { return best_slack_; }

private:
    double best_slack_;
};

class RangeError : public Error {
public:
    using Error::Error;
};

// m sits exactly on n^{3/2}; the caller should use the midrange bound.
class MidrangeError : public Error {
public:
    using Error::Error;
};

class WindowError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

}  // namespace incilab
