#pragma once

#include <stdexcept>
#include <string>

namespace netdis {

// Base class for all library errors. Subclasses map onto the CLI exit
// codes: config errors (2), data errors (3), numerical failures (4).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidParam : public Error {
public:
    using Error::Error;
};

class MissingEdge : public Error {
public:
    using Error::Error;
};

class UnknownNode : public Error {
public:
    using Error::Error;
};

class GenerationFailure : public Error {
public:
    using Error::Error;
};

class NumericalFailure : public Error {
public:
    using Error::Error;
};

class DegreeZero : public Error {
public:
    using Error::Error;
};

class EmptySide : public Error {
public:
    using Error::Error;
};

class ZeroAssoc : public Error {
public:
    using Error::Error;
};

class PlanMismatch : public Error {
public:
    using Error::Error;
};

class ZeroBaseline : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class EmptyGraph : public Error {
public:
    using Error::Error;
};

} // namespace netdis
