#pragma once

#include <stdexcept>
#include <string>

namespace tileperiod {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Region or pattern refers to a tile id the system does not define.
class UnknownTile : public Error {
public:
    using Error::Error;
};

class AlphabetMismatch : public Error {
public:
    using Error::Error;
};

// A search or construction exceeded its configured budget.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

class InvalidDimensions : public Error {
public:
    using Error::Error;
};

class InvalidMachine : public Error {
public:
    using Error::Error;
};

class UncertifiedAperiodicSet : public Error {
public:
    using Error::Error;
};

// Malformed input document; line/column are 1-based, 0 when unknown.
class FormatError : public Error {
public:
    FormatError(const std::string& what, int line = 0, int column = 0)
        : Error(what), line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

} // namespace tileperiod
