#pragma once

#include <stdexcept>
#include <string>

namespace lexwidth {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (bad syntax, duplicate declarations, ...).
class ParseError : public Error {
public:
    using Error::Error;
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what) {}
};

class UnknownLetterError : public Error {
public:
    explicit UnknownLetterError(const std::string& letter)
        : Error("unknown letter '" + letter + "'") {}
};

class UnknownStateError : public Error {
public:
    explicit UnknownStateError(const std::string& state)
        : Error("unknown state '" + state + "'") {}
};

/// The requested order pairs would make some letter smaller than itself.
class CycleError : public Error {
public:
    using Error::Error;
};

class CapExceededError : public Error {
public:
    using Error::Error;
};

class NotIncomparableError : public Error {
public:
    using Error::Error;
};

class AlphabetMismatchError : public Error {
public:
    using Error::Error;
};

}  // namespace lexwidth
