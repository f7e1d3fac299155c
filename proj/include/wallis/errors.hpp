#pragma once

#include <stdexcept>
#include <string>

namespace wallis {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An interval touched a singularity (log of a non-positive interval,
// division through zero, Gamma on the non-positive axis, ...).
struct DomainError : Error {
    using Error::Error;
};

// A result could not be certified to the requested absolute tolerance at the
// working precision. Callers retry with more bits; the library never widens
// silently.
struct ToleranceNotMet : Error {
    using Error::Error;
};

// The power-sum (moment) preconditions of a product are not satisfied.
// For evaluation this is the divergence signal.
struct ConstraintViolation : Error {
    using Error::Error;
};

struct IncompatibleSpecs : Error {
    using Error::Error;
};

struct InvalidTarget : Error {
    using Error::Error;
};

struct InvalidTransform : Error {
    using Error::Error;
};

// A closed form still contains multiple-Gamma atoms at arguments the
// functional equation cannot clear.
struct IrreducibleClosedForm : Error {
    using Error::Error;
};

// Text input rejected; carries 1-based position.
struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& msg, int line_, int column_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
};

}  // namespace wallis
