// Copyright 2026 The sracer Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef SRACER_ERROR_HPP_
#define SRACER_ERROR_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sracer {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define SRACER_ERROR(Name)                      \
    class Name : public Error {                 \
    public:                                     \
        using Error::Error;                     \
    }

// algebra
SRACER_ERROR(UnboundRegister);
SRACER_ERROR(NotAMinterm);
SRACER_ERROR(DuplicatePredicate);
SRACER_ERROR(InvalidEvent);
SRACER_ERROR(ArityMismatch);

// pattern
SRACER_ERROR(UnknownPredicate);
SRACER_ERROR(UnknownRegister);
SRACER_ERROR(InvalidPattern);

// automaton
SRACER_ERROR(InvalidAutomaton);
SRACER_ERROR(ConfigurationCapExceeded);
SRACER_ERROR(UnverifiableDeterminism);

// compiler
SRACER_ERROR(WindowedInput);
SRACER_ERROR(RegisterCollision);
SRACER_ERROR(NotUnrolled);
SRACER_ERROR(NotWindowed);
SRACER_ERROR(NotDeterministic);
SRACER_ERROR(NotComplete);

// forecast
SRACER_ERROR(NoTransition);
SRACER_ERROR(InsufficientData);

// shell
SRACER_ERROR(SerializationError);

#undef SRACER_ERROR

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& what, std::size_t line, std::size_t column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace sracer

#endif  // SRACER_ERROR_HPP_
