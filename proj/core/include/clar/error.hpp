#pragma once

#include <stdexcept>
#include <string>

namespace clar {

/// Broad failure class; the CLI maps each to an exit code.
enum class ErrorKind {
    validation,  // bad parameters or inputs
    numerical,   // decomposition failure, divergence
    io,          // unreadable or malformed files
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& what)
        : Error(ErrorKind::validation, what) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& what)
        : Error(ErrorKind::numerical, what) {}
};

struct IoError : Error {
    explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

/// Malformed file contents; `location` is "line N" or "offset N".
struct ParseError : IoError {
    ParseError(const std::string& path, const std::string& location,
               const std::string& what)
        : IoError(path + ": " + location + ": " + what) {}
};

}  // namespace clar
