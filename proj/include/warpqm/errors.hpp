#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace warpqm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class UnknownSymbolError : public ParseError {
public:
    UnknownSymbolError(const std::string& symbol, std::size_t position)
        : ParseError("unknown symbol '" + symbol + "'", position), symbol_(symbol) {}
    const std::string& symbol() const { return symbol_; }

private:
    std::string symbol_;
};

class SingularPointError : public Error {
public:
    using Error::Error;
};

class UnboundConstantError : public Error {
public:
    explicit UnboundConstantError(const std::string& name)
        : Error("unbound constant '" + name + "'"), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

/// Raised when an exact value would be irrational (fractional power of a non-perfect power).
class InexactValueError : public Error {
public:
    using Error::Error;
};

class UnsupportedDegreeError : public Error {
public:
    using Error::Error;
};

class UnsupportedClassError : public Error {
public:
    using Error::Error;
};

class InternalInconsistencyError : public Error {
public:
    using Error::Error;
};

class SingularMatrixError : public Error {
public:
    using Error::Error;
};

class ZeroCouplingError : public Error {
public:
    using Error::Error;
};

class NonConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace warpqm
